#pragma once

#include "affstr/function.hpp"
#include "affstr/homext.hpp"
#include "affstr/representation.hpp"
#include "affstr/universe.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

namespace affstr {

/// Worker count from AFFSTR_THREADS, defaulting to the hardware concurrency.
inline unsigned thread_count()
{
    if (const char* env = std::getenv("AFFSTR_THREADS")) {
        try {
            const int v = std::stoi(env);
            return v >= 1 ? static_cast<unsigned>(v) : 1u;
        } catch (const std::exception&) {
            return 1;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i < count on up to thread_count() threads; rethrows the first failure.
template <class Body>
void parallel_for(std::size_t count, Body&& body)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

struct EvalOptions {
    std::vector<Rational> t_samples{2, 3, 5};
};

/// The thin coordinate model of a class: host quivers of its summands side by side.
struct TargetHost {
    std::vector<Piece> pieces;
    std::vector<int> first;
    std::vector<int> length;
    std::vector<int> label;
    std::vector<int> component;
    std::vector<RootVector> weight;
    std::vector<RootVector> nets;
    QuiverShape quiver;

    int size() const { return quiver.vertices; }
};

inline TargetHost target_host(const CartanData& cd, const Symbol& s)
{
    TargetHost h;
    const std::size_t arrows = static_cast<std::size_t>(cd.n) + 2;
    for (const auto& p : s.parts) {
        if (p.band && p.m != 1) throw Error(ErrorCode::UnsupportedShape, "band summand with multiplicity " + std::to_string(p.m));
        const int k = static_cast<int>(h.pieces.size());
        const int base = h.quiver.vertices;
        Winding f = p.band ? winding_of_band(cd, piece_band(p)) : winding_of_string(cd, piece_word(p));
        h.pieces.push_back(p);
        h.first.push_back(base);
        h.length.push_back(f.size());
        RootVector w(arrows, 0);
        for (int c = 0; c < f.size(); ++c) {
            h.label.push_back(f.vertex_label[c]);
            h.component.push_back(k);
            h.weight.push_back(w);
            if (c < static_cast<int>(p.letters.size())) w[p.letters[c].arrow] += p.letters[c].sign > 0 ? -1 : 1;
        }
        if (p.band) h.nets.push_back(w);
        for (const auto& [a, b] : f.host.arrows) h.quiver.arrows.emplace_back(base + a, base + b);
        h.quiver.vertices += f.size();
    }
    return h;
}

/// Two vertices of one summand over the same vertex of Q(H) whose torus weights agree.
inline bool has_weight_collision(const TargetHost& h)
{
    QMatrix nets(h.nets.size(), h.nets.empty() ? 0 : h.nets.front().size());
    for (std::size_t r = 0; r < h.nets.size(); ++r)
        for (std::size_t c = 0; c < nets.cols(); ++c) nets(r, c) = h.nets[r][c];
    const std::size_t base = h.nets.empty() ? 0 : rank(nets);
    for (int u = 0; u < h.size(); ++u)
        for (int v = u + 1; v < h.size(); ++v) {
            if (h.component[u] != h.component[v] || h.label[u] != h.label[v]) continue;
            const RootVector d = h.weight[u] - h.weight[v];
            if (is_zero(d)) return true;
            if (h.nets.empty()) continue;
            QMatrix m(nets.rows() + 1, d.size());
            for (std::size_t r = 0; r < nets.rows(); ++r)
                for (std::size_t c = 0; c < d.size(); ++c) m(r, c) = nets(r, c);
            for (std::size_t c = 0; c < d.size(); ++c) m(nets.rows(), c) = static_cast<long>(d[c]);
            if (rank(m) == base) return true;
        }
    return false;
}

/// The class of the thin subquotient on the marked vertices.
inline Symbol marked_symbol(const TargetHost& h, const std::vector<char>& marked)
{
    std::vector<Piece> parts;
    for (std::size_t k = 0; k < h.pieces.size(); ++k) {
        const Piece& p = h.pieces[k];
        const int base = h.first[k], len = h.length[k];
        auto in = [&](int c) { return marked[base + ((c % len) + len) % len] != 0; };
        auto run = [&](int a, int b) {
            if (a == b) {
                parts.push_back(Piece{false, {}, h.label[base + ((a % len) + len) % len], 1});
                return;
            }
            std::vector<Letter> ls;
            for (int c = a; c < b; ++c) ls.push_back(p.letters[c % len]);
            parts.push_back(string_piece(Word{std::move(ls), -1, 0}));
        };
        int start = 0, stop = len;
        if (p.band) {
            int gap = -1;
            for (int c = 0; c < len && gap < 0; ++c)
                if (!in(c)) gap = c;
            if (gap < 0) {
                parts.push_back(p);
                continue;
            }
            start = gap + 1;
            stop = gap + len;
        }
        for (int c = start; c < stop;) {
            if (!in(c)) {
                ++c;
                continue;
            }
            int e = c;
            while (e + 1 < stop && in(e + 1)) ++e;
            run(c, e);
            c = e + 1;
        }
    }
    return make_symbol(std::move(parts));
}

inline bool is_closed(const TargetHost& h, const std::vector<char>& in)
{
    for (const auto& [s, t] : h.quiver.arrows)
        if (in[s] && !in[t]) return false;
    return true;
}

inline RootVector visit_target(RootVector grade)
{
    grade.front() *= 2;
    grade.back() *= 2;
    return grade;
}

/// (f * g)(X) as a sum over coordinate submodules of the thin target.
inline Rational coordinate_value(const CartanData& cd, const Function& f, const Function& g, const Symbol& target)
{
    const TargetHost h = target_host(cd, target);
    const bool haupt = h.pieces.size() == 1 && is_primitive(f) && is_primitive(g);
    if (!haupt && has_weight_collision(h))
        throw Error(ErrorCode::UnsupportedShape, "torus fixed points of " + to_string(cd, target) + " are not isolated");
    Rational total = 0;
    std::vector<char> in(h.size(), 0), out(h.size(), 0);
    auto add = [&] {
        for (int v = 0; v < h.size(); ++v) out[v] = !in[v];
        const Rational a = f(marked_symbol(h, in));
        if (a == 0) return;
        total += a * g(marked_symbol(h, out));
    };

    if (haupt) {
        const int len = h.size();
        const bool cyclic = h.pieces.front().band;
        for (int a = 0; a < len; ++a)
            for (int l = 1; l < len; ++l) {
                if (!cyclic && a != 0 && a + l != len) continue;
                if (!cyclic && a + l > len) continue;
                std::fill(in.begin(), in.end(), 0);
                for (int c = a; c < a + l; ++c) in[c % len] = 1;
                if (is_closed(h, in)) add();
            }
        return total;
    }

    const RootVector need = visit_target(f.grade);
    RootVector have(need.size(), 0), left(need.size(), 0);
    for (int v = 0; v < h.size(); ++v) ++left[h.label[v]];
    const auto inc = h.quiver.incident();
    std::function<void(int)> rec = [&](int v) {
        if (v == h.size()) {
            if (have == need) add();
            return;
        }
        const int lab = h.label[v];
        --left[lab];
        for (char choice : {char(0), char(1)}) {
            if (choice && have[lab] == need[lab]) continue;
            if (!choice && have[lab] + left[lab] < need[lab]) continue;
            in[v] = choice;
            bool ok = true;
            for (int a : inc[v]) {
                const auto [s, t] = h.quiver.arrows[a];
                const int other = s == v ? t : s;
                if (other > v) continue;
                if (in[s] && !in[t]) ok = false;
            }
            if (!ok) continue;
            have[lab] += choice;
            rec(v + 1);
            have[lab] -= choice;
        }
        in[v] = 0;
        ++left[lab];
    };
    rec(0);
    return total;
}

namespace detail {

/// Push-forward of the thin representation of src along a winding morphism into a host.
inline Representation thin_pushforward(const Winding& src, const WindingMorphism& g, const QuiverShape& host)
{
    Representation out{host, std::vector<int>(host.vertices, 0), {}};
    std::vector<int> slot(src.size());
    for (int v = 0; v < src.size(); ++v) slot[v] = out.dims[g.vertex_map[v]]++;
    for (const auto& [s, t] : host.arrows) out.mats.emplace_back(out.dims[t], out.dims[s]);
    for (std::size_t a = 0; a < src.host.arrows.size(); ++a) {
        const auto [s, t] = src.host.arrows[a];
        out.mats[g.arrow_map[a]](slot[t], slot[s]) = 1;
    }
    return out;
}

inline std::vector<Rational> flatten(const Homomorphism& f)
{
    std::vector<Rational> out;
    for (const auto& b : f)
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(b(i, j));
    return out;
}

/// Matrix of a linear operator on the span of `basis`, or nothing if the span is not invariant.
template <class Op>
std::optional<QMatrix> action_matrix(const std::vector<Homomorphism>& basis, Op&& op)
{
    const std::size_t d = basis.size();
    const std::size_t len = flatten(basis.front()).size();
    QMatrix cols(len, d);
    for (std::size_t k = 0; k < d; ++k) {
        const auto v = flatten(basis[k]);
        for (std::size_t i = 0; i < len; ++i) cols(i, k) = v[i];
    }
    QMatrix t(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const auto x = solve(cols, flatten(op(basis[k])));
        if (!x) return std::nullopt;
        for (std::size_t i = 0; i < d; ++i) t(i, k) = (*x)[i];
    }
    return t;
}

/// A cyclic vector when t is a single nilpotent Jordan block.
inline std::optional<std::vector<Rational>> cyclic_vector(const QMatrix& t)
{
    const std::size_t d = t.rows();
    if (rank(t) + 1 != d) return std::nullopt;
    QMatrix p = QMatrix::identity(d);
    for (std::size_t k = 0; k + 1 < d; ++k) p = t * p;
    if (!(t * p).is_zero()) return std::nullopt;
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            if (p(i, k) != 0) {
                std::vector<Rational> e(d, Rational(0));
                e[k] = 1;
                return e;
            }
    return std::nullopt;
}

inline std::vector<Rational> apply(const QMatrix& t, const std::vector<Rational>& v)
{
    std::vector<Rational> out(t.rows(), Rational(0));
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) out[i] += t(i, j) * v[j];
    return out;
}

} // namespace detail

/// Euler characteristic of {U <= R : U = A, R/U = B}, where nil generates End(R) = C[N]/N^m.
/// When Hom(A, R) (or Hom(R, B)) is cyclic over C[N], the units of End(R) act on its projectivisation
/// with orbits the affine cells N^j V \ N^{j+1} V, so each cell contributes 1 if its representative qualifies.
inline Rational grassmannian_stratum_chi(const Representation& a, const Representation& b, const Representation& r, const Homomorphism& nil)
{
    if (dim_hom(a, a) == 1) {
        const auto basis = hom_basis(a, r);
        if (basis.empty()) return 0;
        const auto t = detail::action_matrix(basis, [&](const Homomorphism& f) {
            Homomorphism g(f.size());
            for (std::size_t v = 0; v < f.size(); ++v) g[v] = nil[v] * f[v];
            return g;
        });
        if (t)
            if (auto v = detail::cyclic_vector(*t)) {
                long count = 0;
                for (std::size_t j = 0; j < basis.size(); ++j, *v = detail::apply(*t, *v)) {
                    const auto phi = combine(basis, *v);
                    if (is_injective(phi) && isomorphic(cokernel(r, phi), b)) ++count;
                }
                return count;
            }
    }
    if (dim_hom(b, b) == 1) {
        const auto basis = hom_basis(r, b);
        if (basis.empty()) return 0;
        const auto t = detail::action_matrix(basis, [&](const Homomorphism& f) {
            Homomorphism g(f.size());
            for (std::size_t v = 0; v < f.size(); ++v) g[v] = f[v] * nil[v];
            return g;
        });
        if (t)
            if (auto v = detail::cyclic_vector(*t)) {
                long count = 0;
                for (std::size_t j = 0; j < basis.size(); ++j, *v = detail::apply(*t, *v)) {
                    const auto psi = combine(basis, *v);
                    if (is_surjective(psi) && isomorphic(kernel(r, psi), a)) ++count;
                }
                return count;
            }
    }
    throw Error(ErrorCode::UnsupportedBandEvaluation, "Hom space is not cyclic over End(R)");
}

/// (f * g)(M_{(b,t,m)}) summed over winding morphisms into the band host, for string-supported f and g.
inline Rational band_value_by_morphisms(const CartanData& cd, const Function& f, const Function& g, const Band& b, const Rational& t, int m)
{
    if (static_cast<std::int64_t>(m) * rank_vector(cd, b) != f.grade + g.grade) return 0;
    const Winding host = winding_of_band(cd, b);
    const Representation r = band_host_representation(host, t, m, b[0].sign);
    const Homomorphism nil(host.size(), jordan_block(0, m));
    auto lifts = [&](const Function& fn) {
        std::vector<std::pair<Rational, std::vector<Representation>>> out;
        for (const auto& [sym, c] : fn.terms) {
            if (!sym.is_indecomposable() || sym.parts.front().band)
                throw Error(ErrorCode::UnsupportedBandEvaluation, "band evaluation needs string-supported factors");
            const Winding src = winding_of_string(cd, piece_word(sym.parts.front()));
            std::vector<Representation> reps;
            for (const auto& mor : morphisms(src, host)) reps.push_back(detail::thin_pushforward(src, mor, host.host));
            out.emplace_back(c, std::move(reps));
        }
        return out;
    };
    const auto subs = lifts(f), quots = lifts(g);
    Rational total = 0;
    for (const auto& [cf, as] : subs)
        for (const auto& [cg, bs] : quots)
            for (const auto& a : as)
                for (const auto& bq : bs) {
                    bool fits = true;
                    for (int v = 0; v < host.size() && fits; ++v) fits = a.dims[v] + bq.dims[v] == m;
                    if (!fits) continue;
                    total += cf * cg * grassmannian_stratum_chi(a, bq, r, nil);
                }
    return total;
}

/// (f * g) at one class; band summands with m >= 2 go through the morphism evaluation at every t sample.
inline Rational product_value(const CartanData& cd, const Function& f, const Function& g, const Symbol& target, const EvalOptions& opt = {})
{
    if (rank_vector(cd, target) != f.grade + g.grade) return 0;
    if (is_zero(f.grade)) return f(Symbol{}) * g(target);
    if (is_zero(g.grade)) return f(target) * g(Symbol{});
    if (target.is_indecomposable() && target.parts.front().band && target.parts.front().m > 1) {
        const Piece& p = target.parts.front();
        std::optional<Rational> value;
        for (const auto& t : opt.t_samples) {
            const Rational v = band_value_by_morphisms(cd, f, g, piece_band(p), t, p.m);
            if (value && *value != v) throw Error(ErrorCode::UnsupportedBandEvaluation, "value depends on the band parameter");
            value = v;
        }
        if (!value) throw Error(ErrorCode::UnsupportedBandEvaluation, "no band parameter samples");
        return *value;
    }
    return coordinate_value(cd, f, g, target);
}

inline Function product_on(const CartanData& cd, const Function& f, const Function& g, const std::vector<Symbol>& targets, const EvalOptions& opt = {})
{
    std::vector<Rational> values(targets.size());
    parallel_for(targets.size(), [&](std::size_t i) { values[i] = product_value(cd, f, g, targets[i], opt); });
    Function out{f.grade + g.grade, {}};
    for (std::size_t i = 0; i < targets.size(); ++i) out.add(targets[i], values[i]);
    return out;
}

/// f * g evaluated on a complete universe of its grade.
inline Function convolve(const CartanData& cd, const Function& f, const Function& g, const Universe& u, const EvalOptions& opt = {})
{
    if (u.grade != f.grade + g.grade) throw Error(ErrorCode::IncompleteUniverse, "universe has grade " + format_root(u.grade));
    if (!u.with_decomposables) throw Error(ErrorCode::IncompleteUniverse, "universe of grade " + format_root(u.grade) + " lacks decomposables");
    return product_on(cd, f, g, u.targets, opt);
}

inline Function bracket_on(const CartanData& cd, const Function& f, const Function& g, const Universe& u, const EvalOptions& opt = {})
{
    if (u.grade != f.grade + g.grade) throw Error(ErrorCode::IncompleteUniverse, "universe has grade " + format_root(u.grade));
    if (!u.with_decomposables && !(is_primitive(f) && is_primitive(g)))
        throw Error(ErrorCode::IncompleteUniverse, "decomposable targets needed for non-primitive factors");
    std::vector<Rational> values(u.targets.size());
    parallel_for(u.targets.size(), [&](std::size_t i) {
        values[i] = product_value(cd, f, g, u.targets[i], opt) - product_value(cd, g, f, u.targets[i], opt);
    });
    Function out{u.grade, {}};
    for (std::size_t i = 0; i < u.targets.size(); ++i) out.add(u.targets[i], values[i]);
    return out;
}

/// Convolution algebra of one orientation with a shared universe cache.
class Algebra {
public:
    explicit Algebra(const CartanData& cd, EvalOptions opt = {}) : cd_(cd), bs_(basic_strings(cd_)), opt_(std::move(opt)), cache_(cd_) {}
    Algebra(const Algebra&) = delete;
    Algebra& operator=(const Algebra&) = delete;

    const CartanData& cartan() const { return cd_; }
    const BasicStrings& strings() const { return bs_; }
    const EvalOptions& options() const { return opt_; }

    const Universe& universe(const RootVector& g, bool with_decomposables) { return cache_.get(g, with_decomposables); }

    /// Full product; refuses grades whose decomposable classes are not listed.
    Function convolve(const Function& f, const Function& g) { return affstr::convolve(cd_, f, g, universe(f.grade + g.grade, true), opt_); }

    /// [f, g]; above the dimension limit only primitive factors are accepted and indecomposable targets suffice.
    Function bracket(const Function& f, const Function& g)
    {
        const RootVector gr = f.grade + g.grade;
        const bool small = grade_dim(cd_, gr) <= kDecomposableDimLimit;
        return bracket_on(cd_, f, g, universe(gr, small), opt_);
    }

private:
    CartanData cd_;
    BasicStrings bs_;
    EvalOptions opt_;
    UniverseCache cache_;
};

/// [chi_w, chi_r] in closed form for r in [r_i], with zeta = eta_{tau^-1(i)}.
inline Function key_bracket(const CartanData& cd, const BasicStrings& bs, const Word& w, const Word& r)
{
    int i = 0;
    for (int j = 1; j <= cd.n && i == 0; ++j)
        if (similarity_class(cd, r) == similarity_class(cd, bs.r[j])) i = j;
    if (i == 0) throw Error(ErrorCode::NotSimpleRegular, to_string(cd, r));
    const int z = bs.tau_inv[i];
    const auto ed = end_data(cd, w);
    Function out{rank_vector(cd, w) + rank_vector(cd, r), {}};
    auto term = [&](int sign, std::initializer_list<Word> parts) {
        Word acc;
        bool empty = true;
        for (const Word& p : parts) {
            if (p.is_trivial()) continue;
            acc = empty ? p : concat(cd, acc, p);
            empty = false;
        }
        out.add(string_symbol(acc), sign);
    };
    if (ed.s_sign == 1 && ed.s_prime == i) term(1, {w, eta_word(i, 1), r});
    if (ed.s_sign == -1 && ed.s_prime == z) term(-1, {w, eta_word(z, -1), inverse(r)});
    if (ed.t_sign == 1 && ed.t_prime == i) term(1, {inverse(r), eta_word(i, -1), w});
    if (ed.t_sign == -1 && ed.t_prime == z) term(-1, {r, eta_word(z, 1), w});
    return out;
}

} // namespace affstr
