#pragma once

#include "affstr/bands.hpp"
#include "affstr/basic_strings.hpp"

#include <functional>

namespace affstr {

enum class StringFilter { All, LocallyFree, TauLocallyFree };

namespace detail {

inline void extend_strings(const CartanData& cd, std::vector<Letter>& cur, std::size_t max_letters,
                           const std::function<void(const std::vector<Letter>&)>& emit)
{
    emit(cur);
    if (cur.size() == max_letters) return;
    const Letter last = cur.back();
    const int v = letter_s(cd, last);
    for (int a = 0; a <= cd.n + 1; ++a) {
        if (a == last.arrow) continue;
        for (int sign : {1, -1}) {
            const Letter l{a, sign};
            if (letter_t(cd, l) != v) continue;
            cur.push_back(l);
            extend_strings(cd, cur, max_letters, emit);
            cur.pop_back();
        }
    }
}

} // namespace detail

/// All strings with at most `max_letters` letters; trivial words appear once per vertex.
/// Sorted by (length, letter codes).
inline std::vector<Word> enumerate_strings(const CartanData& cd, std::size_t max_letters, StringFilter filter = StringFilter::All)
{
    std::vector<Word> out;
    for (int v = 0; v <= cd.n; ++v) out.push_back(Word::trivial(v, 1));
    if (max_letters > 0) {
        std::vector<Letter> cur;
        for (int a = 0; a <= cd.n + 1; ++a)
            for (int sign : {1, -1}) {
                cur = {Letter{a, sign}};
                detail::extend_strings(cd, cur, max_letters, [&](const std::vector<Letter>& ls) { out.push_back(Word{ls, -1, 0}); });
            }
    }
    std::sort(out.begin(), out.end());
    if (filter == StringFilter::All) return out;
    std::vector<Word> kept;
    std::optional<TauLocallyFreeIndex> index;
    if (filter == StringFilter::TauLocallyFree) index.emplace(cd, basic_strings(cd), max_letters);
    for (auto& w : out) {
        if (!is_locally_free(cd, w)) continue;
        if (index && !index->contains(w)) continue;
        kept.push_back(std::move(w));
    }
    return kept;
}

/// Closed walks of exactly `length` letters whose square is a string.
inline std::vector<Band> enumerate_band_words(const CartanData& cd, std::size_t length)
{
    std::vector<Band> out;
    if (length == 0) return out;
    std::vector<Letter> cur;
    std::function<void()> rec = [&] {
        if (cur.size() == length) {
            if (!check_band(cd, cur)) out.push_back(Band{cur});
            return;
        }
        const Letter last = cur.back();
        const int v = letter_s(cd, last);
        for (int a = 0; a <= cd.n + 1; ++a) {
            if (a == last.arrow) continue;
            for (int sign : {1, -1}) {
                const Letter l{a, sign};
                if (letter_t(cd, l) != v) continue;
                cur.push_back(l);
                rec();
                cur.pop_back();
            }
        }
    };
    for (int a = 0; a <= cd.n + 1; ++a)
        for (int sign : {1, -1}) {
            cur = {Letter{a, sign}};
            rec();
        }
    return out;
}

/// Primitive bands with h(b) <= max_h, one canonical representative per rotation/inversion class.
inline std::vector<Band> enumerate_bands(const CartanData& cd, int max_h)
{
    std::set<Band> reps;
    for (int h = 1; h <= max_h; ++h)
        for (const auto& b : enumerate_band_words(cd, static_cast<std::size_t>(h) * (2 * cd.n + 2)))
            if (is_primitive(b)) reps.insert(canonical_band(b).band);
    std::vector<Band> out(reps.begin(), reps.end());
    std::stable_sort(out.begin(), out.end(), [](const Band& a, const Band& b) { return a.size() < b.size(); });
    return out;
}

} // namespace affstr
