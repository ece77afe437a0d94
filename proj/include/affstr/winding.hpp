#pragma once

#include "affstr/bands.hpp"

#include <map>
#include <queue>
#include <variant>

namespace affstr {

/// A quiver given by a vertex count and (source, target) pairs.
struct QuiverShape {
    int vertices = 0;
    std::vector<std::pair<int, int>> arrows;

    std::vector<std::vector<int>> incident() const
    {
        std::vector<std::vector<int>> out(vertices);
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            out[arrows[a].first].push_back(static_cast<int>(a));
            if (arrows[a].second != arrows[a].first) out[arrows[a].second].push_back(static_cast<int>(a));
        }
        return out;
    }
};

/// The quiver Q(H): arrows indexed as letters (0 = e0, j = eta_j, n+1 = en).
inline QuiverShape algebra_quiver(const CartanData& cd)
{
    QuiverShape q{cd.n + 1, {}};
    for (int a = 0; a <= cd.n + 1; ++a) q.arrows.emplace_back(arrow_source(cd, a), arrow_target(cd, a));
    return q;
}

enum class HostShape { A, ATilde };

/// A winding F: S -> Q(H).
struct Winding {
    HostShape shape = HostShape::A;
    QuiverShape host;
    std::vector<int> vertex_label;
    std::vector<int> arrow_label;

    int size() const { return host.vertices; }
};

/// F_w: host vertex c sits between letters w_c and w_{c+1}; a direct letter points from c to c-1.
inline Winding winding_of_string(const CartanData& cd, const Word& w)
{
    Winding f;
    const auto vs = walk(cd, w);
    f.host.vertices = static_cast<int>(vs.size());
    f.vertex_label = vs;
    for (std::size_t c = 0; c < w.size(); ++c) {
        const int left = static_cast<int>(c), right = left + 1;
        f.host.arrows.push_back(w[c].sign > 0 ? std::pair{right, left} : std::pair{left, right});
        f.arrow_label.push_back(w[c].arrow);
    }
    return f;
}

/// F_{(b,*)}: the same construction closed up into a cycle of length l.
inline Winding winding_of_band(const CartanData& cd, const Band& b)
{
    Winding f;
    f.shape = HostShape::ATilde;
    const int l = static_cast<int>(b.size());
    f.host.vertices = l;
    f.vertex_label = band_walk(cd, b);
    for (int c = 0; c < l; ++c) {
        const int left = c, right = (c + 1) % l;
        f.host.arrows.push_back(b[c].sign > 0 ? std::pair{right, left} : std::pair{left, right});
        f.arrow_label.push_back(b[c].arrow);
    }
    return f;
}

/// A morphism of windings: vertex and arrow maps commuting with the labels.
struct WindingMorphism {
    std::vector<int> vertex_map;
    std::vector<int> arrow_map;
    bool operator==(const WindingMorphism&) const = default;
    auto operator<=>(const WindingMorphism&) const = default;
};

namespace detail {

inline std::optional<WindingMorphism> extend_morphism(const Winding& src, const Winding& dst, int seed_image)
{
    WindingMorphism g{std::vector<int>(src.size(), -1), std::vector<int>(src.host.arrows.size(), -1)};
    const auto src_inc = src.host.incident();
    const auto dst_inc = dst.host.incident();
    std::queue<int> todo;
    g.vertex_map[0] = seed_image;
    todo.push(0);
    while (!todo.empty()) {
        const int u = todo.front();
        todo.pop();
        const int gu = g.vertex_map[u];
        for (int a : src_inc[u]) {
            const auto [as, at] = src.host.arrows[a];
            const bool out = as == u;
            int match = -1;
            for (int b : dst_inc[gu]) {
                const auto [bs, bt] = dst.host.arrows[b];
                if (dst.arrow_label[b] != src.arrow_label[a]) continue;
                if ((out ? bs : bt) != gu) continue;
                match = b;
            }
            if (match < 0) return std::nullopt;
            if (g.arrow_map[a] >= 0 && g.arrow_map[a] != match) return std::nullopt;
            g.arrow_map[a] = match;
            const int other = out ? at : as;
            const int image = out ? dst.host.arrows[match].second : dst.host.arrows[match].first;
            if (g.vertex_map[other] < 0) {
                if (dst.vertex_label[image] != src.vertex_label[other]) return std::nullopt;
                g.vertex_map[other] = image;
                todo.push(other);
            } else if (g.vertex_map[other] != image) {
                return std::nullopt;
            }
        }
    }
    return g;
}

} // namespace detail

/// Mor(src, dst) for a connected source, seeded at every label-compatible image of vertex 0.
inline std::vector<WindingMorphism> morphisms(const Winding& src, const Winding& dst)
{
    std::vector<WindingMorphism> out;
    if (src.size() == 0) return out;
    for (int v = 0; v < dst.size(); ++v) {
        if (dst.vertex_label[v] != src.vertex_label[0]) continue;
        if (auto g = detail::extend_morphism(src, dst, v)) out.push_back(std::move(*g));
    }
    return out;
}

inline bool is_connected(const QuiverShape& q)
{
    if (q.vertices == 0) return true;
    const auto inc = q.incident();
    std::vector<bool> seen(q.vertices, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int a : inc[u]) {
            const int v = q.arrows[a].first == u ? q.arrows[a].second : q.arrows[a].first;
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == q.vertices;
}

struct Admissibility {
    bool s = false, t = false, a = false, p = false, r = false;
    bool admissible() const { return s && t && a && p && r; }
};

inline Admissibility check_admissible(const CartanData& cd, const Winding& f)
{
    Admissibility res;
    const auto& q = f.host;
    const auto hq = algebra_quiver(cd);
    bool morphism = static_cast<int>(f.vertex_label.size()) == q.vertices && f.arrow_label.size() == q.arrows.size();
    for (std::size_t a = 0; morphism && a < q.arrows.size(); ++a) {
        const auto [s, t] = q.arrows[a];
        morphism = hq.arrows[f.arrow_label[a]] == std::pair{f.vertex_label[s], f.vertex_label[t]};
    }
    if (!morphism) return res;

    res.s = res.t = true;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        for (std::size_t b = a + 1; b < q.arrows.size(); ++b) {
            if (f.arrow_label[a] != f.arrow_label[b]) continue;
            if (q.arrows[a].first == q.arrows[b].first) res.s = false;
            if (q.arrows[a].second == q.arrows[b].second) res.t = false;
        }

    std::vector<int> degree(q.vertices, 0);
    for (const auto& [s, t] : q.arrows) ++degree[s], ++degree[t];
    const bool deg_ok = std::all_of(degree.begin(), degree.end(), [](int d) { return d <= 2; });
    const int e = static_cast<int>(q.arrows.size());
    res.a = is_connected(q) && deg_ok && (e == q.vertices - 1 || (e == q.vertices && e > 0));

    if (res.a) {
        const auto autos = morphisms(f, f);
        res.p = std::count_if(autos.begin(), autos.end(), [&](const WindingMorphism& g) {
                    std::vector<int> sorted = g.vertex_map;
                    std::sort(sorted.begin(), sorted.end());
                    for (int v = 0; v < f.size(); ++v)
                        if (sorted[v] != v) return false;
                    return true;
                }) == 1;
    }

    res.r = true;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        for (std::size_t b = 0; b < q.arrows.size(); ++b)
            if (a != b && q.arrows[a].second == q.arrows[b].first && f.arrow_label[a] == f.arrow_label[b] && is_eps(cd, f.arrow_label[a]))
                res.r = false;
    return res;
}

/// Reads a word (type A) or band (type A~) off an admissible winding by walking the host.
inline std::variant<Word, Band> reconstruct(const CartanData& cd, const Winding& f)
{
    const auto inc = f.host.incident();
    int start = 0;
    if (f.shape == HostShape::A)
        for (int v = 0; v < f.size(); ++v)
            if (inc[v].size() <= 1) {
                start = v;
                break;
            }
    std::vector<Letter> ls;
    int prev_arrow = -1, at = start;
    for (std::size_t step = 0; step < f.host.arrows.size(); ++step) {
        int next = -1;
        for (int a : inc[at])
            if (a != prev_arrow) next = a;
        if (next < 0) break;
        const auto [s, t] = f.host.arrows[next];
        // moving from `at` along `next`: a direct letter is walked from target to source
        const bool direct = t == at;
        ls.push_back({f.arrow_label[next], direct ? 1 : -1});
        at = direct ? s : t;
        prev_arrow = next;
    }
    if (f.shape == HostShape::ATilde) return validate_band(cd, std::move(ls));
    if (ls.empty()) {
        for (int d : {1, -1}) {
            Word w = Word::trivial(f.vertex_label[start], d);
            if (is_valid(cd, w)) return w;
        }
    }
    return validate(cd, std::move(ls));
}

} // namespace affstr
