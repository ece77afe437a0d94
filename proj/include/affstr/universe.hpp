#pragma once

#include "affstr/enumerate.hpp"
#include "affstr/symbols.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace affstr {

/// Largest total dimension for which decomposable classes are listed.
inline constexpr int kDecomposableDimLimit = 10;

inline int grade_dim(const CartanData& cd, const RootVector& g)
{
    std::int64_t d = 0;
    for (std::size_t i = 0; i < g.size(); ++i) d += g[i] * (cd.is_loop_vertex(static_cast<int>(i)) ? 2 : 1);
    return static_cast<int>(d);
}

inline bool leq(const RootVector& a, const RootVector& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline bool is_zero(const RootVector& g)
{
    return std::all_of(g.begin(), g.end(), [](std::int64_t x) { return x == 0; });
}

/// k with g = k rho, if any.
inline std::optional<int> isotropic_multiple(const CartanData& cd, const RootVector& g)
{
    if (g.empty() || g[0] <= 0) return std::nullopt;
    if (static_cast<std::int64_t>(g[0]) * cd.rho() != g) return std::nullopt;
    return static_cast<int>(g[0]);
}

/// Locally free strings of rank g, one representative per inversion pair.
inline std::vector<Word> strings_of_rank(const CartanData& cd, const RootVector& g)
{
    std::vector<Word> out;
    RootVector want(cd.rank());
    for (std::size_t i = 0; i < want.size(); ++i) want[i] = g[i] * (cd.is_loop_vertex(static_cast<int>(i)) ? 2 : 1);
    const int total = grade_dim(cd, g);
    if (total <= 0) return out;
    if (total == 1) {
        for (int v = 1; v < cd.n; ++v)
            if (g[v] == 1) out.push_back(Word::trivial(v, 1));
        return out;
    }
    RootVector seen(cd.rank(), 0);
    std::vector<Letter> cur;
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) + 1 == total) {
            Word w{cur, -1, 0};
            if (is_locally_free(cd, w) && canonical_string(w) == w) out.push_back(std::move(w));
            return;
        }
        const int v = letter_s(cd, cur.back());
        for (int a = 0; a <= cd.n + 1; ++a) {
            if (a == cur.back().arrow) continue;
            for (int sign : {1, -1}) {
                const Letter l{a, sign};
                if (letter_t(cd, l) != v) continue;
                const int next = letter_s(cd, l);
                if (seen[next] == want[next]) continue;
                ++seen[next];
                cur.push_back(l);
                rec();
                cur.pop_back();
                --seen[next];
            }
        }
    };
    for (int a = 0; a <= cd.n + 1; ++a)
        for (int sign : {1, -1}) {
            const Letter l{a, sign};
            const int t = letter_t(cd, l), s = letter_s(cd, l);
            ++seen[t];
            ++seen[s];
            if (seen[t] <= want[t] && seen[s] <= want[s]) {
                cur = {l};
                rec();
            }
            --seen[t];
            --seen[s];
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Band families of grade g: primitive classes of height h dividing k, with multiplicity k/h.
inline std::vector<Piece> band_pieces_of_grade(const CartanData& cd, const RootVector& g)
{
    std::vector<Piece> out;
    const auto k = isotropic_multiple(cd, g);
    if (!k) return out;
    for (const auto& b : enumerate_bands(cd, *k)) {
        const int h = band_height(cd, b);
        if (*k % h != 0) continue;
        if (static_cast<std::int64_t>(*k / h) * rank_vector(cd, b) != g) continue;
        out.push_back(band_piece(b, *k / h));
    }
    return out;
}

inline std::vector<Piece> indecomposable_pieces(const CartanData& cd, const RootVector& g)
{
    std::vector<Piece> out;
    for (const auto& w : strings_of_rank(cd, g)) out.push_back(string_piece(w));
    for (auto& p : band_pieces_of_grade(cd, g)) out.push_back(std::move(p));
    return out;
}

/// Classes with at least two summands; refuses grades above the dimension limit.
inline std::vector<Symbol> decomposable_symbols(const CartanData& cd, const RootVector& g)
{
    if (grade_dim(cd, g) > kDecomposableDimLimit)
        throw Error(ErrorCode::IncompleteUniverse, "decomposables of grade " + format_root(g) + " exceed the dimension limit");
    std::vector<std::pair<RootVector, Piece>> pieces;
    std::vector<std::int64_t> bound(g.begin(), g.end());
    RootVector beta(cd.rank(), 0);
    std::function<void(std::size_t)> boxes = [&](std::size_t i) {
        if (i == beta.size()) {
            if (!is_zero(beta) && beta != g)
                for (auto& p : indecomposable_pieces(cd, beta)) pieces.emplace_back(beta, std::move(p));
            return;
        }
        for (std::int64_t x = 0; x <= bound[i]; ++x) {
            beta[i] = x;
            boxes(i + 1);
        }
        beta[i] = 0;
    };
    boxes(0);
    std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) { return a.second < b.second; });

    std::vector<Symbol> out;
    std::vector<Piece> chosen;
    std::function<void(std::size_t, const RootVector&)> rec = [&](std::size_t from, const RootVector& left) {
        if (is_zero(left)) {
            if (chosen.size() >= 2) out.push_back(make_symbol(chosen));
            return;
        }
        for (std::size_t c = from; c < pieces.size(); ++c) {
            if (!leq(pieces[c].first, left)) continue;
            chosen.push_back(pieces[c].second);
            rec(c, left - pieces[c].first);
            chosen.pop_back();
        }
    };
    rec(0, g);
    std::sort(out.begin(), out.end());
    return out;
}

/// The iso classes of one grade that a product is evaluated on.
struct Universe {
    RootVector grade;
    std::vector<Symbol> targets;
    bool with_decomposables = false;
};

inline Universe make_universe(const CartanData& cd, const RootVector& g, bool with_decomposables)
{
    Universe u{g, {}, with_decomposables};
    if (is_zero(g)) {
        u.targets.push_back(Symbol{});
        u.with_decomposables = true;
        return u;
    }
    for (auto& p : indecomposable_pieces(cd, g)) u.targets.push_back(Symbol{{std::move(p)}});
    if (with_decomposables)
        for (auto& s : decomposable_symbols(cd, g)) u.targets.push_back(std::move(s));
    return u;
}

/// Thread-safe memo of universes by grade.
class UniverseCache {
public:
    explicit UniverseCache(const CartanData& cd) : cd_(cd) {}

    const Universe& get(const RootVector& g, bool with_decomposables)
    {
        std::lock_guard lock(mutex_);
        auto& slot = (with_decomposables ? full_ : indec_)[g];
        if (!slot) slot = std::make_unique<Universe>(make_universe(cd_, g, with_decomposables));
        return *slot;
    }

private:
    const CartanData& cd_;
    std::mutex mutex_;
    std::map<RootVector, std::unique_ptr<Universe>> full_, indec_;
};

} // namespace affstr
