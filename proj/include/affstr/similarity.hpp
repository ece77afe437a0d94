#pragma once

#include "affstr/basic_strings.hpp"
#include "affstr/roots.hpp"

namespace affstr {

/// A word over Q1*: loop letters carry sign 0 (the starred letters).
struct StarWord {
    std::vector<Letter> letters;
    int vertex = -1;

    bool is_trivial() const { return letters.empty(); }
    bool operator==(const StarWord&) const = default;
    auto operator<=>(const StarWord& o) const
    {
        if (auto c = letters.size() <=> o.letters.size(); c != 0) return c;
        if (auto c = letters <=> o.letters; c != 0) return c;
        return vertex <=> o.vertex;
    }
};

inline StarWord similarity_class(const CartanData& cd, const Word& w)
{
    if (w.is_trivial()) return {{}, w.vertex};
    StarWord s;
    for (auto l : w.letters) s.letters.push_back(is_eps(cd, l.arrow) ? Letter{l.arrow, 0} : l);
    return s;
}

inline StarWord inverse(const StarWord& s)
{
    if (s.is_trivial()) return s;
    StarWord out;
    for (auto it = s.letters.rbegin(); it != s.letters.rend(); ++it) out.letters.push_back({it->arrow, -it->sign});
    return out;
}

inline int star_count(const StarWord& s)
{
    return static_cast<int>(std::count_if(s.letters.begin(), s.letters.end(), [](Letter l) { return l.sign == 0; }));
}

/// All resignings of the starred letters, in increasing sign-mask order.
inline std::vector<Word> members(const CartanData& cd, const StarWord& s)
{
    if (s.is_trivial()) return {Word::trivial(s.vertex, 1)};
    std::vector<std::size_t> pos;
    for (std::size_t c = 0; c < s.letters.size(); ++c)
        if (s.letters[c].sign == 0) pos.push_back(c);
    std::vector<Word> out;
    for (unsigned mask = 0; mask < (1u << pos.size()); ++mask) {
        std::vector<Letter> ls = s.letters;
        for (std::size_t b = 0; b < pos.size(); ++b) ls[pos[b]].sign = (mask >> (pos.size() - 1 - b)) & 1u ? -1 : 1;
        out.push_back(validate(cd, std::move(ls)));
    }
    return out;
}

inline std::string to_string(const CartanData& cd, const StarWord& s)
{
    if (s.is_trivial()) return "1_" + std::to_string(s.vertex);
    std::string out;
    for (std::size_t c = 0; c < s.letters.size(); ++c) {
        const Letter l = s.letters[c];
        out += c ? "." : "";
        out += l.sign == 0 ? (l.arrow == 0 ? "e0*" : "en*") : letter_text(cd, l);
    }
    return out;
}

inline StarWord parse_star_word(const CartanData& cd, const std::string& text)
{
    if (text.rfind("1_", 0) == 0) return similarity_class(cd, parse_word(cd, text));
    StarWord s;
    for (auto tok : split(text, '.')) {
        if (tok == "e0*") s.letters.push_back({0, 0});
        else if (tok == "en*") s.letters.push_back({cd.n + 1, 0});
        else s.letters.push_back(parse_letter(cd, tok));
    }
    members(cd, {s.letters, -1});
    return s;
}

inline bool is_self_inverse(const StarWord& s) { return s.is_trivial() || inverse(s) == s; }

/// Star-word builder for the normal forms.
class StarBuilder {
public:
    explicit StarBuilder(const CartanData& cd) : cd_(cd) {}

    /// eta_{ij} = eta_{i+1}^{w(i+1)} ... eta_j^{w(j)}, walking from i up to j.
    StarBuilder& up(int i, int j)
    {
        start(i);
        for (int a = i + 1; a <= j; ++a) w_.letters.push_back({a, cd_.omega(a)});
        at_ = j;
        return *this;
    }
    /// eta_{ij}^-1, walking from j down to i.
    StarBuilder& down(int i, int j)
    {
        start(j);
        for (int a = j; a >= i + 1; --a) w_.letters.push_back({a, -cd_.omega(a)});
        at_ = i;
        return *this;
    }
    StarBuilder& eps0()
    {
        start(0);
        w_.letters.push_back({0, 0});
        return *this;
    }
    StarBuilder& epsn()
    {
        start(cd_.n);
        w_.letters.push_back({cd_.n + 1, 0});
        return *this;
    }
    StarWord build() const
    {
        StarWord s = w_;
        if (s.letters.empty()) s.vertex = first_;
        return s;
    }

private:
    void start(int v)
    {
        if (at_ >= 0 && at_ != v) throw Error(ErrorCode::Internal, "star builder path broken");
        if (first_ < 0) first_ = v;
        at_ = v;
    }
    const CartanData& cd_;
    StarWord w_;
    int at_ = -1;
    int first_ = -1;
};

enum class XType { MinusPlus, MinusMinus, PlusMinus, PlusPlus };

inline const char* name(XType t)
{
    switch (t) {
    case XType::MinusPlus: return "-+";
    case XType::MinusMinus: return "--";
    case XType::PlusMinus: return "+-";
    case XType::PlusPlus: return "++";
    }
    return "?";
}

inline void x_check_range(const CartanData& cd, XType t, int i, int j, int k)
{
    const int n = cd.n;
    auto in_i1 = [n](int x) { return x >= 1 && x <= n; };
    auto in_i2 = [n](int x) { return x >= 0 && x <= n - 1; };
    bool ok = k >= 0;
    switch (t) {
    case XType::MinusPlus: ok = ok && in_i1(i) && in_i2(j); break;
    case XType::MinusMinus: ok = ok && in_i1(i) && in_i1(j); break;
    case XType::PlusMinus: ok = ok && in_i2(i) && in_i1(j); break;
    case XType::PlusPlus: ok = ok && in_i2(i) && in_i2(j); break;
    }
    if (!ok) throw Error(ErrorCode::IndexOutOfRange, std::string("x") + name(t) + " indices out of range");
}

/// The locally free star-word x^{type}_{i,j,k}.
inline StarWord x_form(const CartanData& cd, XType t, int i, int j, int k)
{
    x_check_range(cd, t, i, j, k);
    const int n = cd.n;
    StarBuilder b(cd);
    auto loop_pp = [&] { b.up(j, n).epsn().down(0, n).eps0().up(0, j); };    // eta_{jn} en* eta^-1 e0* eta_{0j}
    auto loop_mm = [&] { b.down(0, j).eps0().up(0, n).epsn().down(j, n); };  // eta_{0j}^-1 e0* eta en* eta_{jn}^-1
    switch (t) {
    case XType::MinusPlus:
        if (i <= j) b.up(i, j);
        else b.up(i, n).epsn().down(0, n).eps0().up(0, j);
        for (int c = 0; c < k; ++c) loop_pp();
        break;
    case XType::MinusMinus:
        b.up(i, n).epsn().down(j, n);
        for (int c = 0; c < k; ++c) loop_mm();
        break;
    case XType::PlusMinus:
        if (i >= j) b.down(j, i);
        else b.down(0, i).eps0().up(0, n).epsn().down(j, n);
        for (int c = 0; c < k; ++c) loop_mm();
        break;
    case XType::PlusPlus:
        b.down(0, i).eps0().up(0, j);
        for (int c = 0; c < k; ++c) loop_pp();
        break;
    }
    return b.build();
}

/// Closed-form rank vector of x^{type}_{i,j,k}.
inline RootVector x_rank(const CartanData& cd, XType t, int i, int j, int k)
{
    x_check_range(cd, t, i, j, k);
    const int n = cd.n;
    const RootVector rho = cd.rho();
    auto kr = [&](int m) { return static_cast<std::int64_t>(m) * rho; };
    switch (t) {
    case XType::MinusPlus:
        if (i <= j) return alpha_ij(n, i, j) + kr(k);
        if (i == j + 1) return kr(k + 1);
        return kr(k + 1) - alpha_ij(n, j + 1, i - 1);
    case XType::MinusMinus:
        if (i <= j) return (j < n ? beta_ij(n, i, j) : alpha_ij(n, i, n)) + kr(k);
        return (i < n ? beta_ij(n, j, i) : alpha_ij(n, j, n)) + kr(k);
    case XType::PlusMinus:
        if (i >= j) return alpha_ij(n, j, i) + kr(k);
        if (i == j - 1) return kr(k + 1);
        return kr(k + 1) - alpha_ij(n, i + 1, j - 1);
    case XType::PlusPlus:
        if (i <= j) return kr(k + 1) - (j < n - 1 ? beta_ij(n, i + 1, j + 1) : alpha_ij(n, i + 1, n));
        return kr(k + 1) - (i < n - 1 ? beta_ij(n, j + 1, i + 1) : alpha_ij(n, j + 1, n));
    }
    return {};
}

struct XForm {
    XType type;
    int i, j, k;
    StarWord word;
};

/// All x-forms with k <= k_max, ordered by (k, type, i, j).
inline std::vector<XForm> all_x_forms(const CartanData& cd, int k_max)
{
    std::vector<XForm> out;
    const int n = cd.n;
    for (int k = 0; k <= k_max; ++k)
        for (XType t : {XType::MinusPlus, XType::MinusMinus, XType::PlusMinus, XType::PlusPlus}) {
            const bool i_from1 = t == XType::MinusPlus || t == XType::MinusMinus;
            const bool j_from1 = t == XType::MinusMinus || t == XType::PlusMinus;
            for (int i = i_from1 ? 1 : 0; i <= (i_from1 ? n : n - 1); ++i)
                for (int j = j_from1 ? 1 : 0; j <= (j_from1 ? n : n - 1); ++j) out.push_back({t, i, j, k, x_form(cd, t, i, j, k)});
        }
    return out;
}

/// Similarity classes [w] u [w^-1] of the locally free strings of rank alpha.
inline std::vector<StarWord> root_to_classes(const CartanData& cd, const BasicStrings& bs, const RootVector& alpha)
{
    const auto info = classify_root(cd, alpha);
    if (!info) throw Error(ErrorCode::NotARoot, format_root(alpha));
    std::vector<StarWord> out;
    auto add = [&](const StarWord& s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    if (!info->real) {
        for (int i = 1; i <= cd.n; ++i) {
            const Word w = hook_right(cd, bs, bs.r[i], cd.n * info->k - 1);
            add(similarity_class(cd, w));
            add(similarity_class(cd, inverse(w)));
        }
        return out;
    }
    for (const auto& x : all_x_forms(cd, info->k + 1))
        if (x_rank(cd, x.type, x.i, x.j, x.k) == alpha) {
            add(x.word);
            add(inverse(x.word));
        }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace affstr
