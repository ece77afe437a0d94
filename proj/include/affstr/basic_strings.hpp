#pragma once

#include "affstr/bands.hpp"

#include <map>
#include <set>

namespace affstr {

namespace detail {

inline int left_arrow(const CartanData&, int i) { return i == 0 ? 0 : i; }
inline int right_arrow(const CartanData& cd, int i) { return i == cd.n ? cd.n + 1 : i + 1; }

/// Maximal path of arrows starting with `first` (forward) or ending with `first` (backward).
inline std::vector<int> maximal_path(const CartanData& cd, int first, bool forward)
{
    std::vector<int> path{first};
    for (;;) {
        const int prev = path.back();
        const int cur = forward ? arrow_target(cd, prev) : arrow_source(cd, prev);
        std::vector<int> next;
        for (int a = 0; a <= cd.n + 1; ++a) {
            const int end = forward ? arrow_source(cd, a) : arrow_target(cd, a);
            if (end == cur && a != prev) next.push_back(a);
        }
        if (next.empty()) break;
        if (next.size() > 1) throw Error(ErrorCode::Internal, "ambiguous path continuation");
        path.push_back(next.front());
    }
    if (!forward) std::reverse(path.begin(), path.end());
    return path;
}

/// Path a_1..a_m read against the arrows: a_m ... a_1.
inline Word direct_word(const std::vector<int>& path)
{
    Word w;
    for (auto it = path.rbegin(); it != path.rend(); ++it) w.letters.push_back({*it, 1});
    return w;
}

/// Path a_1..a_m read along the arrows: a_1^-1 ... a_m^-1.
inline Word inverse_word(const std::vector<int>& path)
{
    Word w;
    for (int a : path) w.letters.push_back({a, -1});
    return w;
}

inline Word join(const CartanData& cd, int v, const std::optional<Word>& a, const std::optional<Word>& b)
{
    if (a && b) return concat(cd, *a, *b);
    if (a) return *a;
    if (b) return *b;
    return Word::trivial(v, 1);
}

/// Trivial word at the end of x that extends it.
inline Word trivial_after(const CartanData& cd, const Word& x)
{
    for (int d : {1, -1}) {
        Word t = Word::trivial(word_s(cd, x), d);
        if (can_concat(cd, x, t)) return t;
    }
    throw Error(ErrorCode::Internal, "no trivial extension");
}

} // namespace detail

struct BasicStrings {
    std::vector<Word> p, q, e;  ///< indexed by I
    std::vector<Word> r, rp;    ///< indexed by I'; entry 0 unused
    std::vector<int> tau;       ///< tau[i] for i in I'; entry 0 unused
    std::vector<int> tau_inv;

    int tau_pow(int i, int k) const
    {
        const int n = static_cast<int>(tau.size()) - 1;
        k %= n;
        if (k < 0) k += n;
        for (int c = 0; c < k; ++c) i = tau[i];
        return i;
    }
};

inline Word projective_string(const CartanData& cd, int i)
{
    using namespace detail;
    std::optional<Word> left, right;
    if (arrow_source(cd, left_arrow(cd, i)) == i) left = direct_word(maximal_path(cd, left_arrow(cd, i), true));
    if (arrow_source(cd, right_arrow(cd, i)) == i) right = inverse_word(maximal_path(cd, right_arrow(cd, i), true));
    return join(cd, i, left, right);
}

inline Word injective_string(const CartanData& cd, int i)
{
    using namespace detail;
    std::optional<Word> left, right;
    if (arrow_target(cd, left_arrow(cd, i)) == i) left = inverse_word(maximal_path(cd, left_arrow(cd, i), false));
    if (arrow_target(cd, right_arrow(cd, i)) == i) right = direct_word(maximal_path(cd, right_arrow(cd, i), false));
    return join(cd, i, left, right);
}

inline Word simple_string(const CartanData& cd, int i)
{
    if (i == 0) return letter_word({0, 1});
    if (i == cd.n) return letter_word({cd.n + 1, -1});
    return Word::trivial(i, 1);
}

/// Longest inverse string r with eta_i r a string.
inline Word hook_tail(const CartanData& cd, int i)
{
    const int v = cd.eta_source(i);
    const Word eta = eta_word(i, 1);
    for (int a = 0; a <= cd.n + 1; ++a)
        if (a != i && arrow_source(cd, a) == v) return detail::inverse_word(detail::maximal_path(cd, a, true));
    return detail::trivial_after(cd, eta);
}

/// Longest direct string r' with eta_i^-1 r' a string.
inline Word cohook_tail(const CartanData& cd, int i)
{
    const int v = cd.eta_target(i);
    const Word eta = eta_word(i, -1);
    for (int a = 0; a <= cd.n + 1; ++a)
        if (a != i && arrow_target(cd, a) == v) return detail::direct_word(detail::maximal_path(cd, a, false));
    return detail::trivial_after(cd, eta);
}

inline BasicStrings basic_strings(const CartanData& cd)
{
    const int n = cd.n;
    BasicStrings b;
    for (int i = 0; i <= n; ++i) {
        b.p.push_back(projective_string(cd, i));
        b.q.push_back(injective_string(cd, i));
        b.e.push_back(simple_string(cd, i));
    }
    b.r.resize(n + 1);
    b.rp.resize(n + 1);
    b.tau.assign(n + 1, 0);
    b.tau_inv.assign(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        b.r[i] = hook_tail(cd, i);
        b.rp[i] = cohook_tail(cd, i);
    }
    for (int i = 1; i <= n; ++i) {
        const Word target = inverse(b.rp[i]);
        for (int j = 1; j <= n; ++j)
            if (b.r[j] == target) b.tau[i] = j;
        if (b.tau[i] == 0) throw Error(ErrorCode::Internal, "no tau image for " + std::to_string(i));
        b.tau_inv[b.tau[i]] = i;
    }
    int i = 1, len = 0;
    do {
        i = b.tau[i];
        ++len;
    } while (i != 1 && len <= n);
    if (len != n) throw Error(ErrorCode::Internal, "tau is not an n-cycle");
    return b;
}

enum class HookKind { RightPlus, LeftPlus, RightMinus, LeftMinus };

/// w[1], [1]w, w[-1], [-1]w applied `count` times.
inline Word hook_extend(const CartanData& cd, const BasicStrings& bs, Word w, HookKind kind, int count = 1)
{
    const bool left = kind == HookKind::LeftPlus || kind == HookKind::LeftMinus;
    const int want = kind == HookKind::RightPlus || kind == HookKind::LeftPlus ? 1 : -1;
    if (left) w = inverse(w);
    for (int c = 0; c < count; ++c) {
        if (!is_locally_free(cd, w)) throw Error(ErrorCode::NotLocallyFree, to_string(cd, w));
        const auto [sp, ss] = right_end(cd, w);
        if (ss != want) throw Error(ErrorCode::SignMismatch, to_string(cd, w));
        w = want > 0 ? concat(cd, {w, eta_word(sp, 1), bs.r[sp]}) : concat(cd, {w, eta_word(sp, -1), bs.rp[sp]});
    }
    return left ? inverse(w) : w;
}

inline Word hook_right(const CartanData& cd, const BasicStrings& bs, const Word& w, int k)
{
    return hook_extend(cd, bs, w, k >= 0 ? HookKind::RightPlus : HookKind::RightMinus, std::abs(k));
}

inline Word hook_left(const CartanData& cd, const BasicStrings& bs, const Word& w, int k)
{
    return hook_extend(cd, bs, w, k >= 0 ? HookKind::LeftPlus : HookKind::LeftMinus, std::abs(k));
}

/// [k]w[k] for k >= 0 and [-k]w[-k] for k < 0.
inline Word hook_both(const CartanData& cd, const BasicStrings& bs, const Word& w, int k)
{
    return hook_left(cd, bs, hook_right(cd, bs, w, k), k);
}

enum class WeakClass { Preprojective, Regular, Preinjective };

inline const char* name(WeakClass c)
{
    switch (c) {
    case WeakClass::Preprojective: return "weakly preprojective";
    case WeakClass::Regular: return "weakly regular";
    case WeakClass::Preinjective: return "weakly preinjective";
    }
    return "?";
}

struct WeakClassification {
    WeakClass cls;
    bool isotropic = false;
};

inline WeakClassification classify_weak(const CartanData& cd, const Word& w)
{
    const auto ed = end_data(cd, w);
    if (ed.s_sign == 1 && ed.t_sign == 1) return {WeakClass::Preprojective, false};
    if (ed.s_sign == -1 && ed.t_sign == -1) return {WeakClass::Preinjective, false};
    return {WeakClass::Regular, ed.s_prime == ed.t_prime};
}

enum class TauFamily { Preprojective, Regular, Preinjective };

struct TauMember {
    Word word;
    TauFamily family;
    int i = 0;
    int k = 0;
};

/// The tau-locally free strings with at most `max_letters` letters, up to inversion.
inline std::vector<TauMember> tau_locally_free_strings(const CartanData& cd, const BasicStrings& bs, std::size_t max_letters)
{
    std::vector<TauMember> out;
    for (int i = 0; i <= cd.n; ++i) {
        for (int k = 0;; ++k) {
            const Word w = hook_both(cd, bs, bs.p[i], k);
            if (w.size() > max_letters) break;
            out.push_back({w, TauFamily::Preprojective, i, k});
        }
        for (int k = 0;; ++k) {
            const Word w = hook_both(cd, bs, bs.q[i], -k);
            if (w.size() > max_letters) break;
            out.push_back({w, TauFamily::Preinjective, i, k});
        }
    }
    for (int i = 1; i <= cd.n; ++i)
        for (int k = 0;; ++k) {
            const Word w = hook_right(cd, bs, bs.r[i], k);
            if (w.size() > max_letters) break;
            out.push_back({w, TauFamily::Regular, i, k});
        }
    return out;
}

class TauLocallyFreeIndex {
public:
    TauLocallyFreeIndex(const CartanData& cd, const BasicStrings& bs, std::size_t max_letters) : max_(max_letters)
    {
        for (auto& m : tau_locally_free_strings(cd, bs, max_letters)) keys_.insert(canonical_key(m.word));
    }
    std::size_t max_letters() const { return max_; }
    bool contains(const Word& w) const
    {
        if (w.size() > max_) throw Error(ErrorCode::OutOfBounds, "word longer than index bound");
        return keys_.count(canonical_key(w)) > 0;
    }

private:
    std::size_t max_;
    std::set<std::vector<int>> keys_;
};

inline bool is_tau_locally_free(const CartanData& cd, const BasicStrings& bs, const Word& w)
{
    if (!is_locally_free(cd, w)) return false;
    return TauLocallyFreeIndex(cd, bs, w.size()).contains(w);
}

namespace detail {

inline std::vector<Letter> up_walk(const CartanData& cd, int i, int j)
{
    std::vector<Letter> out;
    for (int a = i + 1; a <= j; ++a) out.push_back({a, cd.omega(a)});
    return out;
}

inline std::vector<Letter> down_walk(const CartanData& cd, int i, int j)
{
    std::vector<Letter> out;
    for (int a = j; a >= i + 1; --a) out.push_back({a, -cd.omega(a)});
    return out;
}

inline void append(std::vector<Letter>& out, const std::vector<Letter>& more) { out.insert(out.end(), more.begin(), more.end()); }

} // namespace detail

/// eta^-1 e0^s eta en^s with s = -1 when n is a source of the loop-free quiver and s = +1 when it is a sink.
inline Band stable_band(const CartanData& cd)
{
    const int s = cd.eta_source(cd.n) == cd.n ? -1 : 1;
    std::vector<Letter> ls = detail::down_walk(cd, 0, cd.n);
    ls.push_back({0, s});
    detail::append(ls, detail::up_walk(cd, 0, cd.n));
    ls.push_back({cd.n + 1, s});
    return validate_band(cd, std::move(ls));
}

/// b_k = eta_{0,n-1}^-1 (e0^s eta en^s eta^-1)^{k-1} e0^s eta_{0,n-1}, of rank k rho - alpha_n.
inline Word stable_band_string(const CartanData& cd, int k)
{
    if (k < 1) throw Error(ErrorCode::OutOfBounds, "b_k needs k >= 1");
    const int s = cd.eta_source(cd.n) == cd.n ? -1 : 1;
    std::vector<Letter> ls = detail::down_walk(cd, 0, cd.n - 1);
    for (int c = 1; c < k; ++c) {
        ls.push_back({0, s});
        detail::append(ls, detail::up_walk(cd, 0, cd.n));
        ls.push_back({cd.n + 1, s});
        detail::append(ls, detail::down_walk(cd, 0, cd.n));
    }
    ls.push_back({0, s});
    detail::append(ls, detail::up_walk(cd, 0, cd.n - 1));
    return validate(cd, std::move(ls));
}

} // namespace affstr
