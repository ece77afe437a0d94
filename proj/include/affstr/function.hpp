#pragma once

#include "affstr/matrix.hpp"
#include "affstr/similarity.hpp"
#include "affstr/symbols.hpp"

#include <map>

namespace affstr {

/// A constructible function of a fixed grade, stored by its nonzero values on isomorphism classes.
struct Function {
    RootVector grade;
    std::map<Symbol, Rational> terms;

    Rational operator()(const Symbol& s) const
    {
        auto it = terms.find(s);
        return it == terms.end() ? Rational(0) : it->second;
    }

    void add(const Symbol& s, const Rational& c)
    {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(s, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Function& o) const { return grade == o.grade && terms == o.terms; }
};

inline Function zero_function(const RootVector& grade) { return Function{grade, {}}; }

/// The unit: value 1 on the zero module.
inline Function unit_function(const CartanData& cd)
{
    Function f{RootVector(cd.rank(), 0), {}};
    f.add(Symbol{}, 1);
    return f;
}

inline Function operator+(Function a, const Function& b)
{
    if (a.grade != b.grade) throw Error(ErrorCode::Internal, "adding functions of different grades");
    for (const auto& [s, c] : b.terms) a.add(s, c);
    return a;
}

inline Function operator*(const Rational& k, Function a)
{
    if (k == 0) return zero_function(a.grade);
    for (auto& [s, c] : a.terms) c *= k;
    return a;
}

inline Function operator-(const Function& a, const Function& b) { return a + Rational(-1) * b; }

/// chi_w: the characteristic function of the class of M_w.
inline Function chi(const CartanData& cd, const Word& w)
{
    if (!is_locally_free(cd, w)) throw Error(ErrorCode::NotLocallyFree, to_string(cd, w));
    Function f{rank_vector(cd, w), {}};
    f.add(string_symbol(w), 1);
    return f;
}

inline Function chi_band(const CartanData& cd, const Band& b, int m = 1)
{
    Function f{static_cast<std::int64_t>(m) * rank_vector(cd, b), {}};
    f.add(band_symbol(b, m), 1);
    return f;
}

/// chi_[w] with the one-half rule for self-inverse classes.
inline Function chi_class(const CartanData& cd, const StarWord& c)
{
    const auto ms = members(cd, c);
    const Rational coeff = is_self_inverse(c) && !c.is_trivial() ? Rational(1, 2) : Rational(1);
    Function f{rank_vector(cd, ms.front()), {}};
    for (const auto& w : ms) {
        if (!is_locally_free(cd, w)) throw Error(ErrorCode::NotLocallyFree, to_string(cd, w));
        f.add(string_symbol(w), coeff);
    }
    return f;
}

inline Function chi_class(const CartanData& cd, const Word& w) { return chi_class(cd, similarity_class(cd, w)); }

inline Function theta(const CartanData& cd, int i) { return chi(cd, simple_string(cd, i)); }

inline bool is_primitive(const Function& f)
{
    return std::all_of(f.terms.begin(), f.terms.end(), [](const auto& t) { return t.first.is_indecomposable(); });
}

/// Rank of a family of functions over the union of their supports.
inline std::size_t function_rank(const std::vector<Function>& fs)
{
    std::map<Symbol, std::size_t> col;
    for (const auto& f : fs)
        for (const auto& [s, c] : f.terms) col.emplace(s, col.size());
    QMatrix m(fs.size(), col.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (const auto& [s, c] : fs[i].terms) m(i, col[s]) = c;
    return rank(m);
}

inline bool linear_independent(const std::vector<Function>& fs) { return function_rank(fs) == fs.size(); }

inline std::string to_string(const CartanData& cd, const Function& f)
{
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [s, c] : f.terms) {
        if (!out.empty()) out += "\n";
        out += to_string(c) + " * [" + to_string(cd, s) + "]";
    }
    return out;
}

} // namespace affstr
