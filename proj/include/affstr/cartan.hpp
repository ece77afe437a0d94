#pragma once

#include "affstr/matrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace affstr {

using RootVector = std::vector<std::int64_t>;

/// Orientation as the sign sequence omega(1..n); +1 ("L") means eta_j points from j to j-1.
class Orientation {
public:
    Orientation() = default;
    explicit Orientation(std::vector<int> signs) : signs_(std::move(signs))
    {
        for (int s : signs_)
            if (s != 1 && s != -1) throw std::invalid_argument("orientation signs must be +1 or -1");
    }

    static Orientation parse(const std::string& text)
    {
        std::vector<int> signs;
        for (char c : text) {
            if (c == 'L' || c == 'l') signs.push_back(1);
            else if (c == 'R' || c == 'r') signs.push_back(-1);
            else throw std::invalid_argument("orientation must be a string over {L,R}: " + text);
        }
        return Orientation(std::move(signs));
    }

    /// All 2^n orientations, lexicographic with L before R.
    static std::vector<Orientation> all(int n)
    {
        std::vector<Orientation> out;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> s(n);
            for (int j = 0; j < n; ++j) s[j] = (mask >> (n - 1 - j)) & 1u ? -1 : 1;
            out.emplace_back(std::move(s));
        }
        return out;
    }

    std::size_t size() const { return signs_.size(); }
    int operator()(int j) const { return signs_.at(j - 1); }

    std::string str() const
    {
        std::string s;
        for (int x : signs_) s += x > 0 ? 'L' : 'R';
        return s;
    }

    Orientation reversed() const
    {
        std::vector<int> s = signs_;
        for (int& x : s) x = -x;
        return Orientation(std::move(s));
    }

    bool operator==(const Orientation&) const = default;

private:
    std::vector<int> signs_;
};

/// Cartan data of affine type C~n with minimal symmetrizer and a fixed orientation.
struct CartanData {
    int n = 0;
    Orientation omega;
    ZMatrix C;
    ZMatrix D;
    ZMatrix R;
    ZMatrix coxeter;

    std::size_t rank() const { return static_cast<std::size_t>(n) + 1; }
    bool is_loop_vertex(int i) const { return i == 0 || i == n; }

    /// Head and tail of eta_j.
    int eta_target(int j) const { return omega(j) > 0 ? j - 1 : j; }
    int eta_source(int j) const { return omega(j) > 0 ? j : j - 1; }

    /// Pairs (t, s) of the eta arrows.
    std::vector<std::pair<int, int>> omega_pairs() const
    {
        std::vector<std::pair<int, int>> out;
        for (int j = 1; j <= n; ++j) out.emplace_back(eta_target(j), eta_source(j));
        return out;
    }

    /// Sinks and sources of the quiver with the loops removed.
    bool is_sink(int i) const
    {
        for (int j = 1; j <= n; ++j)
            if (eta_source(j) == i) return false;
        return true;
    }
    bool is_source(int i) const
    {
        for (int j = 1; j <= n; ++j)
            if (eta_target(j) == i) return false;
        return true;
    }

    RootVector rho() const
    {
        RootVector r(rank(), 2);
        r.front() = 1;
        r.back() = 1;
        return r;
    }

    RootVector simple(int i) const
    {
        RootVector r(rank(), 0);
        r.at(i) = 1;
        return r;
    }
};

inline ZMatrix cartan_matrix(int n)
{
    ZMatrix c(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) c(i, i) = 2;
    for (int i = 0; i < n; ++i) {
        c(i, i + 1) = -1;
        c(i + 1, i) = -1;
    }
    c(1, 0) = -2;
    c(n - 1, n) = -2;
    return c;
}

inline ZMatrix symmetrizer(int n)
{
    ZMatrix d(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) d(i, i) = 1;
    d(0, 0) = 2;
    d(n, n) = 2;
    return d;
}

inline ZMatrix coxeter_matrix(const ZMatrix& r)
{
    const auto inv = inverse_fraction_free(r);
    if (!inv) throw std::logic_error("bilinear form is singular");
    const QMatrix c = -(*inv * to_rational(r.transpose()));
    if (!is_integral(c)) throw std::logic_error("Coxeter matrix is not integral");
    return to_integer(c);
}

inline CartanData build_cartan(int n, const Orientation& omega)
{
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (omega.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("orientation length must equal n");
    CartanData cd;
    cd.n = n;
    cd.omega = omega;
    cd.C = cartan_matrix(n);
    cd.D = symmetrizer(n);
    cd.R = ZMatrix(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) cd.R(i, i) = cd.is_loop_vertex(i) ? 2 : 1;
    for (int j = 1; j <= n; ++j) {
        const int t = cd.eta_target(j);
        const int s = cd.eta_source(j);
        const bool touches_loop = cd.is_loop_vertex(t) || cd.is_loop_vertex(s);
        cd.R(s, t) = touches_loop ? -2 : -1;
    }
    cd.coxeter = coxeter_matrix(cd.R);
    return cd;
}

inline CartanData build_cartan(const Orientation& omega) { return build_cartan(static_cast<int>(omega.size()), omega); }

inline std::int64_t euler_form(const CartanData& cd, const RootVector& a, const RootVector& b)
{
    if (a.size() != cd.rank() || b.size() != cd.rank()) throw std::invalid_argument("root vector dimension mismatch");
    Integer sum = 0;
    for (std::size_t i = 0; i < cd.rank(); ++i)
        for (std::size_t j = 0; j < cd.rank(); ++j) sum += Integer(a[i]) * cd.R(i, j) * Integer(b[j]);
    return sum.get_si();
}

inline std::int64_t defect(const CartanData& cd, const RootVector& a) { return euler_form(cd, a, cd.rho()); }

inline RootVector apply_matrix(const ZMatrix& m, const RootVector& v)
{
    if (m.cols() != v.size()) throw std::invalid_argument("dimension mismatch");
    RootVector out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * Integer(v[j]);
        out[i] = acc.get_si();
    }
    return out;
}

inline ZMatrix inverse_coxeter(const CartanData& cd)
{
    const auto inv = inverse_fraction_free(cd.coxeter);
    if (!inv || !is_integral(*inv)) throw std::logic_error("Coxeter matrix is not unimodular");
    return to_integer(*inv);
}

inline RootVector operator+(RootVector a, const RootVector& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b.at(i);
    return a;
}

inline RootVector operator-(RootVector a, const RootVector& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b.at(i);
    return a;
}

inline RootVector operator*(std::int64_t k, RootVector a)
{
    for (auto& x : a) x *= k;
    return a;
}

inline std::string format_root(const RootVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

} // namespace affstr
