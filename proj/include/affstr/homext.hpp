#pragma once

#include "affstr/basic_strings.hpp"
#include "affstr/representation.hpp"

namespace affstr {

/// A homomorphism as one matrix per vertex.
using Homomorphism = std::vector<QMatrix>;

namespace detail {

struct BlockIndex {
    std::vector<std::size_t> offset;
    std::size_t total = 0;
};

inline BlockIndex vertex_blocks(const Representation& m, const Representation& n)
{
    BlockIndex b;
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        b.offset.push_back(b.total);
        b.total += static_cast<std::size_t>(n.dims[v]) * m.dims[v];
    }
    return b;
}

inline BlockIndex arrow_blocks(const Representation& m, const Representation& n)
{
    BlockIndex b;
    for (const auto& [s, t] : m.quiver.arrows) {
        b.offset.push_back(b.total);
        b.total += static_cast<std::size_t>(n.dims[t]) * m.dims[s];
    }
    return b;
}

/// d0(f)_a = N_a f_s - f_t M_a, as a matrix on the stacked vertex blocks.
inline QMatrix d0_matrix(const Representation& m, const Representation& n)
{
    const auto vb = vertex_blocks(m, n);
    const auto ab = arrow_blocks(m, n);
    QMatrix d(ab.total, vb.total);
    for (std::size_t a = 0; a < m.quiver.arrows.size(); ++a) {
        const auto [s, t] = m.quiver.arrows[a];
        const std::size_t ms = m.dims[s], mt = m.dims[t], nt = n.dims[t], ns = n.dims[s];
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < ms; ++j) {
                const std::size_t row = ab.offset[a] + i * ms + j;
                for (std::size_t k = 0; k < ns; ++k) d(row, vb.offset[s] + k * ms + j) += n.mats[a](i, k);
                for (std::size_t k = 0; k < mt; ++k) d(row, vb.offset[t] + i * mt + k) -= m.mats[a](k, j);
            }
    }
    return d;
}

/// d1(g)_{a^2} = N_a g_a + g_a M_a for the loop relations.
inline QMatrix d1_matrix(const Representation& m, const Representation& n, const std::vector<int>& loops)
{
    const auto ab = arrow_blocks(m, n);
    std::size_t rows = 0;
    std::vector<std::size_t> roff;
    for (int a : loops) {
        roff.push_back(rows);
        const int v = m.quiver.arrows[a].first;
        rows += static_cast<std::size_t>(n.dims[v]) * m.dims[v];
    }
    QMatrix d(rows, ab.total);
    for (std::size_t r = 0; r < loops.size(); ++r) {
        const int a = loops[r];
        const std::size_t dm = m.dims[m.quiver.arrows[a].first], dn = n.dims[m.quiver.arrows[a].first];
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) {
                const std::size_t row = roff[r] + i * dm + j;
                for (std::size_t k = 0; k < dn; ++k) d(row, ab.offset[a] + k * dm + j) += n.mats[a](i, k);
                for (std::size_t k = 0; k < dm; ++k) d(row, ab.offset[a] + i * dm + k) += m.mats[a](k, j);
            }
    }
    return d;
}

inline Homomorphism unpack(const Representation& m, const Representation& n, const std::vector<Rational>& v)
{
    const auto vb = vertex_blocks(m, n);
    Homomorphism f;
    for (std::size_t x = 0; x < m.dims.size(); ++x) {
        QMatrix b(n.dims[x], m.dims[x]);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = v[vb.offset[x] + i * b.cols() + j];
        f.push_back(std::move(b));
    }
    return f;
}

} // namespace detail

/// Basis of Hom(M, N).
inline std::vector<Homomorphism> hom_basis(const Representation& m, const Representation& n)
{
    std::vector<Homomorphism> out;
    for (const auto& v : nullspace(detail::d0_matrix(m, n))) out.push_back(detail::unpack(m, n, v));
    return out;
}

inline int dim_hom(const Representation& m, const Representation& n)
{
    const auto d0 = detail::d0_matrix(m, n);
    return static_cast<int>(d0.cols() - rank(d0));
}

/// dim Ext^1(M, N) from the start of the minimal projective bimodule resolution; `loops` lists the arrows a with a^2 = 0.
inline int dim_ext1(const Representation& m, const Representation& n, const std::vector<int>& loops)
{
    const auto d0 = detail::d0_matrix(m, n);
    const auto d1 = detail::d1_matrix(m, n, loops);
    const int ker_d1 = static_cast<int>(d1.cols() - rank(d1));
    return ker_d1 - static_cast<int>(rank(d0));
}

inline int dim_ext1(const CartanData& cd, const Representation& m, const Representation& n) { return dim_ext1(m, n, {0, cd.n + 1}); }

inline Homomorphism combine(const std::vector<Homomorphism>& basis, const std::vector<Rational>& coeffs)
{
    Homomorphism f = basis.front();
    for (auto& b : f) b = QMatrix(b.rows(), b.cols());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t x = 0; x < f.size(); ++x)
            for (std::size_t r = 0; r < f[x].rows(); ++r)
                for (std::size_t c = 0; c < f[x].cols(); ++c) f[x](r, c) += coeffs[i] * basis[i][x](r, c);
    return f;
}

/// Deterministic coefficient vectors used to probe a Hom space for generic elements.
inline std::vector<std::vector<Rational>> probe_coefficients(std::size_t dim, int count)
{
    static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    std::vector<std::vector<Rational>> out;
    for (int c = 0; c < count; ++c) {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < dim; ++i) {
            const long p = primes[(i + static_cast<std::size_t>(c)) % 16];
            v.push_back(Rational(p * (c + 1) + static_cast<long>(i * i), static_cast<long>(i + 1)));
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline bool is_injective(const Homomorphism& f)
{
    for (const auto& b : f)
        if (rank(b) != b.cols()) return false;
    return true;
}

inline bool is_surjective(const Homomorphism& f)
{
    for (const auto& b : f)
        if (rank(b) != b.rows()) return false;
    return true;
}

/// An isomorphism M -> N found among generic elements of Hom(M, N), if any.
inline std::optional<Homomorphism> find_isomorphism(const Representation& m, const Representation& n)
{
    if (m.dims != n.dims) return std::nullopt;
    const auto basis = hom_basis(m, n);
    if (basis.empty()) return m.total_dim() == 0 ? std::optional<Homomorphism>(Homomorphism(m.dims.size())) : std::nullopt;
    for (const auto& c : probe_coefficients(basis.size(), 6)) {
        auto f = combine(basis, c);
        if (is_injective(f)) return f;
    }
    return std::nullopt;
}

inline bool isomorphic(const Representation& m, const Representation& n) { return find_isomorphism(m, n).has_value(); }

/// Cokernel of an injective homomorphism U -> M, with a basis of M/U chosen per vertex.
inline Representation cokernel(const Representation& m, const Homomorphism& f)
{
    Representation out{m.quiver, {}, {}};
    std::vector<QMatrix> proj;  // M_v -> (M/U)_v
    std::vector<QMatrix> lift;  // (M/U)_v -> M_v
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        const QMatrix& img = f[v];
        const std::size_t d = m.dims[v];
        // complete the image columns to a basis with unit vectors
        QMatrix basis(d, 0);
        std::vector<std::vector<Rational>> cols;
        for (std::size_t c = 0; c < img.cols(); ++c) {
            std::vector<Rational> col(d);
            for (std::size_t r = 0; r < d; ++r) col[r] = img(r, c);
            cols.push_back(col);
        }
        const std::size_t k = cols.size();
        std::vector<std::size_t> extra;
        for (std::size_t e = 0; e < d && cols.size() < d; ++e) {
            std::vector<Rational> unit(d, Rational(0));
            unit[e] = 1;
            auto trial = cols;
            trial.push_back(unit);
            QMatrix t(d, trial.size());
            for (std::size_t c = 0; c < trial.size(); ++c)
                for (std::size_t r = 0; r < d; ++r) t(r, c) = trial[c][r];
            if (rank(t) == trial.size()) {
                cols = std::move(trial);
                extra.push_back(e);
            }
        }
        QMatrix full(d, d);
        for (std::size_t c = 0; c < d; ++c)
            for (std::size_t r = 0; r < d; ++r) full(r, c) = cols[c][r];
        const auto inv = inverse(full);
        if (!inv) throw Error(ErrorCode::Internal, "cokernel basis is singular");
        QMatrix p(d - k, d), l(d, d - k);
        for (std::size_t i = 0; i < d - k; ++i) {
            for (std::size_t j = 0; j < d; ++j) p(i, j) = (*inv)(k + i, j);
            l(extra[i], i) = 1;
        }
        out.dims.push_back(static_cast<int>(d - k));
        proj.push_back(std::move(p));
        lift.push_back(std::move(l));
    }
    for (std::size_t a = 0; a < m.quiver.arrows.size(); ++a) {
        const auto [s, t] = m.quiver.arrows[a];
        out.mats.push_back(proj[t] * m.mats[a] * lift[s]);
    }
    return out;
}

/// Kernel of a surjective homomorphism M -> B, as a subrepresentation of M.
inline Representation kernel(const Representation& m, const Homomorphism& f)
{
    Representation out{m.quiver, {}, {}};
    std::vector<QMatrix> incl, coords;
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        const auto ns = nullspace(f[v]);
        QMatrix k(m.dims[v], ns.size());
        for (std::size_t c = 0; c < ns.size(); ++c)
            for (std::size_t r = 0; r < k.rows(); ++r) k(r, c) = ns[c][r];
        out.dims.push_back(static_cast<int>(ns.size()));
        // left inverse of k via (k^T k)^-1 k^T
        QMatrix kt = k.transpose();
        QMatrix left = ns.empty() ? QMatrix(0, m.dims[v]) : *inverse(kt * k) * kt;
        incl.push_back(std::move(k));
        coords.push_back(std::move(left));
    }
    for (std::size_t a = 0; a < m.quiver.arrows.size(); ++a) {
        const auto [s, t] = m.quiver.arrows[a];
        out.mats.push_back(coords[t] * m.mats[a] * incl[s]);
    }
    return out;
}

/// dim Hom(M_v, M_w) by Crawley-Boevey's factor/sub string pairs.
inline int combinatorial_hom_dim(const CartanData& cd, const Word& v, const Word& w)
{
    auto substring = [](const Word& x, int a, int b) {
        Word s;
        s.letters.assign(x.letters.begin() + a, x.letters.begin() + b);
        return s;
    };
    const auto vv = walk(cd, v), wv = walk(cd, w);
    const int lv = static_cast<int>(v.size()), lw = static_cast<int>(w.size());
    int count = 0;
    for (int a = 0; a <= lv; ++a)
        for (int b = a; b <= lv; ++b) {
            // factor: boundary arrows point out of [a, b]
            if (a > 0 && v[a - 1].sign < 0) continue;
            if (b < lv && v[b].sign > 0) continue;
            const Word f = substring(v, a, b);
            for (int c = 0; c <= lw; ++c)
                for (int d = c; d <= lw; ++d) {
                    if (d - c != b - a) continue;
                    // image: boundary arrows point into [c, d]
                    if (c > 0 && w[c - 1].sign > 0) continue;
                    if (d < lw && w[d].sign < 0) continue;
                    const Word g = substring(w, c, d);
                    if (f.is_trivial()) {
                        count += vv[a] == wv[c];
                        continue;
                    }
                    count += f.letters == g.letters;
                    count += f.letters == inverse(g).letters;
                }
        }
    return count;
}

enum class ArDirection { Translate, InverseTranslate };

/// Auslander-Reiten translate on the strings where it is given by hooks.
inline Word ar_translate(const CartanData& cd, const BasicStrings& bs, const Word& w, ArDirection dir)
{
    for (int i = 1; i <= cd.n; ++i)
        if (same_up_to_inverse(w, bs.r[i])) return bs.r[dir == ArDirection::Translate ? bs.tau[i] : bs.tau_inv[i]];
    const auto wc = classify_weak(cd, w).cls;
    if (dir == ArDirection::InverseTranslate && wc == WeakClass::Preprojective) return hook_both(cd, bs, w, 1);
    if (dir == ArDirection::Translate && wc == WeakClass::Preinjective) return hook_both(cd, bs, w, -1);
    throw Error(ErrorCode::NotApplicable, to_string(cd, w));
}

} // namespace affstr
