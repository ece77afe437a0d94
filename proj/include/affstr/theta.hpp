#pragma once

#include "affstr/convolution.hpp"

namespace affstr {

/// How a Theta function was obtained.
struct ThetaStep {
    enum class Kind { Simple, Nested, Peel, Regular } kind = Kind::Simple;
    RootVector alpha;
    RootVector sub;        ///< rank of v for Peel
    int j = 0;             ///< index of the regular simple class used
    int k = 0;             ///< iteration depth for Regular
    Rational factor = 1;   ///< bracket = factor * Theta
    std::string word;      ///< peeled representative
};

inline const char* name(ThetaStep::Kind k)
{
    switch (k) {
    case ThetaStep::Kind::Simple: return "simple";
    case ThetaStep::Kind::Nested: return "nested";
    case ThetaStep::Kind::Peel: return "peel";
    case ThetaStep::Kind::Regular: return "regular";
    }
    return "?";
}

/// c with f = c * g, if g is nonzero and f is a multiple of it.
inline std::optional<Rational> proportion(const Function& f, const Function& g)
{
    if (g.is_zero() || f.grade != g.grade) return std::nullopt;
    const auto& [sym, c] = *g.terms.begin();
    const Rational ratio = f(sym) / c;
    if (ratio == 0 || !(f == ratio * g)) return std::nullopt;
    return ratio;
}

inline Word regular_string(const CartanData& cd, const BasicStrings& bs, int i, int k) { return hook_right(cd, bs, bs.r[i], k); }

/// Value of Theta^{(n)}_{k rho} on the stable band modules: +1 when n is a source, -1 when it is a sink.
inline int isotropic_sign(const CartanData& cd) { return cd.eta_source(cd.n) == cd.n ? 1 : -1; }

/// Builds the Theta functions of one orientation by brackets from the generators theta_i.
class ThetaBuilder {
public:
    explicit ThetaBuilder(Algebra& alg) : alg_(alg), cd_(alg.cartan()), bs_(alg.strings()) {}

    /// chi_[r_i] as a left-nested bracket of generators along the support interval of r_i, with its sign.
    const std::pair<Function, ThetaStep>& regular_simple(int i)
    {
        if (auto it = simple_.find(i); it != simple_.end()) return it->second;
        const Function want = chi_class(cd_, bs_.r[i]);
        const RootVector rk = rank_vector(cd_, bs_.r[i]);
        int lo = -1, hi = -1;
        for (int v = 0; v <= cd_.n; ++v)
            if (rk[v] != 0) {
                if (lo < 0) lo = v;
                hi = v;
            }
        for (bool descending : {true, false}) {
            Function f = theta(cd_, descending ? hi : lo);
            for (int c = 1; c <= hi - lo; ++c) f = alg_.bracket(f, theta(cd_, descending ? hi - c : lo + c));
            if (auto ratio = proportion(f, want); ratio && (*ratio == 1 || *ratio == -1)) {
                ThetaStep s{ThetaStep::Kind::Nested, rk, {}, i, descending ? 1 : 0, *ratio, to_string(cd_, bs_.r[i])};
                return simple_.emplace(i, std::pair{want, s}).first->second;
            }
        }
        throw Error(ErrorCode::Internal, "no nested bracket of generators gives chi_[r_" + std::to_string(i) + "]");
    }

    /// Left-nested [...[chi_[r_i], chi_[r_tau^-1(i)]], ..., chi_[r_tau^-k(i)]].
    Function iterated_regular_bracket(int i, int k)
    {
        Function f = chi_class(cd_, bs_.r[i]);
        for (int m = 1; m <= k; ++m) f = alg_.bracket(f, chi_class(cd_, bs_.r[bs_.tau_pow(i, -m)]));
        return f;
    }

    /// Right side of the iterated bracket identity.
    Function iterated_regular_expected(int i, int k) const
    {
        Function f = chi_class(cd_, regular_string(cd_, bs_, i, k));
        if ((k + 1) % cd_.n == 0) f = f - chi_class(cd_, regular_string(cd_, bs_, bs_.tau[i], k));
        return f;
    }

    /// Theta_alpha for a real root, together with the last recipe step.
    const std::pair<Function, ThetaStep>& theta_real(const RootVector& alpha)
    {
        if (auto it = memo_.find(alpha); it != memo_.end()) return it->second;
        const auto info = classify_root(cd_, alpha);
        if (!info) throw Error(ErrorCode::NotARoot, format_root(alpha));
        if (!info->real) throw Error(ErrorCode::NotRealRoot, format_root(alpha));
        const auto classes = root_to_classes(cd_, bs_, alpha);
        const Function want = chi_class(cd_, classes.front());

        for (int i = 0; i <= cd_.n; ++i)
            if (alpha == cd_.simple(i)) return store(alpha, theta(cd_, i), {ThetaStep::Kind::Simple, alpha, {}, i, 0, 1, to_string(cd_, bs_.e[i])});

        if (defect(cd_, alpha) == 0)
            for (int i = 1; i <= cd_.n; ++i)
                for (int k = 0;; ++k) {
                    const Word w = regular_string(cd_, bs_, i, k);
                    const RootVector rk = rank_vector(cd_, w);
                    if (!leq(rk, alpha)) break;
                    if ((k + 1) % cd_.n != 0 && rk == alpha) {
                        if (k == 0) return store(alpha, regular_simple(i).first, regular_simple(i).second);
                        const Function f = iterated_regular_bracket(i, k);
                        if (auto ratio = proportion(f, want))
                            return store(alpha, want, {ThetaStep::Kind::Regular, alpha, {}, i, k, *ratio, to_string(cd_, w)});
                    }
                }

        for (const auto& x : strings_of_rank(cd_, alpha))
            for (const Word& w : {x, inverse(x)})
                if (auto step = try_peel(alpha, w, want)) return store(alpha, want, *step);
        throw Error(ErrorCode::Internal, "no bracket recipe found for " + format_root(alpha));
    }

    /// Theta^{(i)}_{k rho}: the difference form for i < n and [Theta_{k rho - alpha_n}, theta_n] for i = n.
    Function theta_isotropic(int k, int i)
    {
        if (k < 1 || i < 1 || i > cd_.n) throw Error(ErrorCode::OutOfBounds, "isotropic index out of range");
        if (i < cd_.n) return difference_function(k, i);
        const RootVector beta = static_cast<std::int64_t>(k) * cd_.rho() - cd_.simple(cd_.n);
        return alg_.bracket(theta_real(beta).first, theta(cd_, cd_.n));
    }

    /// chi_[r_i[kn-1]] - chi_[r_tau(i)[kn-1]] for any i in 1..n.
    Function difference_function(int k, int i) const
    {
        const int len = k * cd_.n - 1;
        return chi_class(cd_, regular_string(cd_, bs_, i, len)) - chi_class(cd_, regular_string(cd_, bs_, bs_.tau[i], len));
    }

private:
    const std::pair<Function, ThetaStep>& store(const RootVector& alpha, Function f, ThetaStep s)
    {
        return memo_.emplace(alpha, std::pair{std::move(f), std::move(s)}).first->second;
    }

    /// w = v eta_j r with r in [r_j], or w = v zeta^-1 r^-1 with zeta = eta_{tau^-1(j)}.
    std::optional<ThetaStep> try_peel(const RootVector& alpha, const Word& w, const Function& want)
    {
        for (std::size_t p = 0; p < w.size(); ++p) {
            const Letter l = w[p];
            if (is_eps(cd_, l.arrow)) continue;
            Word v, tail;
            v.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(p));
            tail.letters.assign(w.letters.begin() + static_cast<long>(p) + 1, w.letters.end());
            for (int j = 1; j <= cd_.n; ++j) {
                const bool direct = l.sign > 0 && l.arrow == j;
                const bool dual = l.sign < 0 && l.arrow == bs_.tau_inv[j];
                if (!direct && !dual) continue;
                const Word r = direct ? tail : inverse(tail);
                const bool in_class = r.is_trivial() ? bs_.r[j].is_trivial() && letter_s(cd_, l) == bs_.r[j].vertex
                                                     : similarity_class(cd_, r) == similarity_class(cd_, bs_.r[j]);
                if (!in_class) continue;
                if (v.is_trivial()) v = Word::trivial(word_t(cd_, eta_word(l.arrow, l.sign)), 1);
                if (!is_locally_free(cd_, v)) continue;
                const RootVector sub = rank_vector(cd_, v);
                if (const auto info = classify_root(cd_, sub); !info || !info->real) continue;
                const Function f = alg_.bracket(theta_real(sub).first, chi_class(cd_, bs_.r[j]));
                if (auto ratio = proportion(f, want)) return ThetaStep{ThetaStep::Kind::Peel, alpha, sub, j, 0, *ratio, to_string(cd_, w)};
            }
        }
        return std::nullopt;
    }

    Algebra& alg_;
    const CartanData& cd_;
    const BasicStrings& bs_;
    std::map<int, std::pair<Function, ThetaStep>> simple_;
    std::map<RootVector, std::pair<Function, ThetaStep>> memo_;
};

/// (ad theta_i)^{1 - c_ij}(theta_j) vanishes on its whole universe.
inline bool serre_check(Algebra& alg, int i, int j)
{
    if (i == j) throw Error(ErrorCode::OutOfBounds, "Serre relation needs i != j");
    const auto& cd = alg.cartan();
    const long c = cd.C(i, j).get_si();
    Function f = theta(cd, j);
    for (long e = 0; e < 1 - c; ++e) f = alg.bracket(theta(cd, i), f);
    return f.is_zero();
}

} // namespace affstr
