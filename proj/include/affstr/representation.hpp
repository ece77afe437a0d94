#pragma once

#include "affstr/matrix.hpp"
#include "affstr/winding.hpp"

#include <numeric>

namespace affstr {

/// A finite-dimensional representation of a quiver: mats[a] maps dims[source] to dims[target].
struct Representation {
    QuiverShape quiver;
    std::vector<int> dims;
    std::vector<QMatrix> mats;

    int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }
};

inline void check_shapes(const Representation& m)
{
    for (std::size_t a = 0; a < m.quiver.arrows.size(); ++a) {
        const auto [s, t] = m.quiver.arrows[a];
        if (m.mats[a].rows() != static_cast<std::size_t>(m.dims[t]) || m.mats[a].cols() != static_cast<std::size_t>(m.dims[s]))
            throw Error(ErrorCode::Internal, "matrix shape mismatch at arrow " + std::to_string(a));
    }
}

/// The zero-relations e0^2 = en^2 = 0 of H.
inline void check_relations(const CartanData& cd, const Representation& m)
{
    for (int a : {0, cd.n + 1})
        if (!(m.mats[a] * m.mats[a]).is_zero()) throw Error(ErrorCode::RelationViolation, "loop " + std::to_string(a) + " squares to nonzero");
}

inline Representation thin_representation(const QuiverShape& q)
{
    Representation r{q, std::vector<int>(q.vertices, 1), {}};
    for (std::size_t a = 0; a < q.arrows.size(); ++a) r.mats.push_back(QMatrix::identity(1));
    return r;
}

inline QMatrix jordan_block(const Rational& t, int m)
{
    QMatrix j(m, m);
    for (int i = 0; i < m; ++i) {
        j(i, i) = t;
        if (i + 1 < m) j(i, i + 1) = 1;
    }
    return j;
}

/// R^{(t,m)} on the cycle host of F_{(b,*)}: identities except a Jordan block on the arrow of b_1.
inline Representation band_host_representation(const Winding& f, const Rational& t, int m, int first_sign)
{
    Representation r{f.host, std::vector<int>(f.size(), m), {}};
    for (std::size_t a = 0; a < f.host.arrows.size(); ++a) r.mats.push_back(QMatrix::identity(m));
    r.mats[0] = jordan_block(first_sign > 0 ? t : Rational(1 / t), m);
    return r;
}

/// Offsets of the host vertices inside the fibres of the push-forward.
inline std::vector<int> fibre_offsets(const Winding& f, const std::vector<int>& host_dims, int labels)
{
    std::vector<int> used(labels, 0), out(f.size());
    for (int v = 0; v < f.size(); ++v) {
        out[v] = used[f.vertex_label[v]];
        used[f.vertex_label[v]] += host_dims[v];
    }
    return out;
}

/// F^lambda: direct sum over the fibres, arrow blocks placed by label.
inline Representation pushforward(const CartanData& cd, const Winding& f, const Representation& host)
{
    const auto q = algebra_quiver(cd);
    Representation out{q, std::vector<int>(q.vertices, 0), {}};
    for (int v = 0; v < f.size(); ++v) out.dims[f.vertex_label[v]] += host.dims[v];
    const auto off = fibre_offsets(f, host.dims, q.vertices);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) out.mats.emplace_back(out.dims[q.arrows[a].second], out.dims[q.arrows[a].first]);
    for (std::size_t a = 0; a < f.host.arrows.size(); ++a) {
        const auto [s, t] = f.host.arrows[a];
        QMatrix& big = out.mats[f.arrow_label[a]];
        const QMatrix& small = host.mats[a];
        for (std::size_t i = 0; i < small.rows(); ++i)
            for (std::size_t j = 0; j < small.cols(); ++j) big(off[t] + i, off[s] + j) += small(i, j);
    }
    check_relations(cd, out);
    return out;
}

inline Representation string_module(const CartanData& cd, const Word& w)
{
    const auto f = winding_of_string(cd, w);
    return pushforward(cd, f, thin_representation(f.host));
}

inline Representation band_module(const CartanData& cd, const Band& b, const Rational& t, int m)
{
    if (t == 0) throw Error(ErrorCode::Internal, "band parameter must be nonzero");
    const auto f = winding_of_band(cd, b);
    return pushforward(cd, f, band_host_representation(f, t, m, b[0].sign));
}

inline bool is_locally_free_module(const CartanData& cd, const Representation& m)
{
    for (int a : {0, cd.n + 1}) {
        const int v = eps_vertex(cd, a);
        if (m.dims[v] % 2 != 0) return false;
        if (static_cast<int>(rank(m.mats[a])) * 2 != m.dims[v]) return false;
    }
    return true;
}

inline RootVector rank_of_module(const CartanData& cd, const Representation& m)
{
    if (!is_locally_free_module(cd, m)) throw Error(ErrorCode::NotLocallyFree, "module is not locally free");
    RootVector r(m.dims.begin(), m.dims.end());
    r[0] /= 2;
    r[cd.n] /= 2;
    return r;
}

inline Representation direct_sum(const Representation& x, const Representation& y)
{
    Representation out{x.quiver, {}, {}};
    for (std::size_t v = 0; v < x.dims.size(); ++v) out.dims.push_back(x.dims[v] + y.dims[v]);
    for (std::size_t a = 0; a < x.mats.size(); ++a) {
        QMatrix m(x.mats[a].rows() + y.mats[a].rows(), x.mats[a].cols() + y.mats[a].cols());
        for (std::size_t i = 0; i < x.mats[a].rows(); ++i)
            for (std::size_t j = 0; j < x.mats[a].cols(); ++j) m(i, j) = x.mats[a](i, j);
        for (std::size_t i = 0; i < y.mats[a].rows(); ++i)
            for (std::size_t j = 0; j < y.mats[a].cols(); ++j) m(x.mats[a].rows() + i, x.mats[a].cols() + j) = y.mats[a](i, j);
        out.mats.push_back(std::move(m));
    }
    return out;
}

/// Connected components of a vertex subset of a host quiver, each listed in host order.
inline std::vector<std::vector<int>> iso_type(const QuiverShape& host, const std::vector<bool>& subset)
{
    const auto inc = host.incident();
    std::vector<bool> seen(host.vertices, false);
    std::vector<std::vector<int>> out;
    for (int v = 0; v < host.vertices; ++v) {
        if (!subset[v] || seen[v]) continue;
        std::vector<int> comp, stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int a : inc[u]) {
                const int w = host.arrows[a].first == u ? host.arrows[a].second : host.arrows[a].first;
                if (subset[w] && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

/// Whether a vertex subset spans a subrepresentation of a thin representation.
inline bool is_closed_subset(const QuiverShape& host, const std::vector<bool>& subset)
{
    for (const auto& [s, t] : host.arrows)
        if (subset[s] && !subset[t]) return false;
    return true;
}

} // namespace affstr
