#pragma once

#include "affstr/strings.hpp"

namespace affstr {

/// A cyclic word b with b*b a string; stored as one period as given.
struct Band {
    std::vector<Letter> letters;

    std::size_t size() const { return letters.size(); }
    const Letter& operator[](std::size_t i) const { return letters[i]; }
    bool operator==(const Band&) const = default;
    auto operator<=>(const Band&) const = default;
};

inline std::optional<std::pair<ErrorCode, int>> check_band(const CartanData& cd, const std::vector<Letter>& ls)
{
    if (ls.empty()) return std::pair{ErrorCode::ParseError, 0};
    std::vector<Letter> twice = ls;
    twice.insert(twice.end(), ls.begin(), ls.end());
    if (auto bad = check_letters(cd, twice)) return std::pair{bad->first, bad->second % static_cast<int>(ls.size())};
    return std::nullopt;
}

inline Band validate_band(const CartanData& cd, std::vector<Letter> ls)
{
    if (auto bad = check_band(cd, ls)) throw Error(bad->first, "band at letter " + std::to_string(bad->second), bad->second);
    return Band{std::move(ls)};
}

inline bool is_valid(const CartanData& cd, const Band& b) { return !check_band(cd, b.letters); }

inline std::string to_string(const CartanData& cd, const Band& b)
{
    std::string s = "band:";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "." : "") + letter_text(cd, b[i]);
    return s;
}

inline Band parse_band(const CartanData& cd, std::string text)
{
    if (text.rfind("band:", 0) == 0) text = text.substr(5);
    std::vector<Letter> ls;
    for (const auto& tok : split(text, '.')) ls.push_back(parse_letter(cd, tok));
    return validate_band(cd, std::move(ls));
}

/// b^(j) = b_{j+1} ... b_l b_1 ... b_j.
inline Band rotate(const Band& b, std::size_t j)
{
    Band out;
    const std::size_t l = b.size();
    for (std::size_t c = 0; c < l; ++c) out.letters.push_back(b.letters[(c + j) % l]);
    return out;
}

inline Band inverse(const Band& b)
{
    Band out;
    for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) out.letters.push_back(it->inv());
    return out;
}

/// Smallest period p with b = v^(l/p).
inline std::size_t period(const Band& b)
{
    const std::size_t l = b.size();
    for (std::size_t p = 1; p <= l; ++p) {
        if (l % p) continue;
        bool ok = true;
        for (std::size_t c = 0; c + p < l && ok; ++c) ok = b.letters[c] == b.letters[c + p];
        if (ok) return p;
    }
    return l;
}

inline bool is_primitive(const Band& b) { return period(b) == b.size(); }

inline Band power(const Band& b, int m)
{
    Band out;
    for (int k = 0; k < m; ++k) out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

/// Number of windings around the underlying cycle of the quiver.
inline int band_height(const CartanData& cd, const Band& b) { return static_cast<int>(b.size()) / (2 * cd.n + 2); }

/// Vertex of the cycle position c, i.e. t(b_{c+1}).
inline std::vector<int> band_walk(const CartanData& cd, const Band& b)
{
    std::vector<int> v;
    for (const auto& l : b.letters) v.push_back(letter_t(cd, l));
    return v;
}

inline RootVector rank_vector(const CartanData& cd, const Band& b)
{
    RootVector visits(cd.rank(), 0);
    for (int v : band_walk(cd, b)) ++visits[v];
    return halve_visits(cd, std::move(visits));
}

struct CanonicalBand {
    Band band;
    bool inverted = false;  ///< true when the representative comes from b^-1 (parameter t becomes 1/t)
    std::size_t rotation = 0;
};

inline CanonicalBand canonical_band(const Band& b)
{
    CanonicalBand best{b, false, 0};
    bool first = true;
    const Band inv = inverse(b);
    for (bool inverted : {false, true})
        for (std::size_t j = 0; j < b.size(); ++j) {
            Band cand = rotate(inverted ? inv : b, j);
            if (first || cand < best.band) {
                best = {std::move(cand), inverted, j};
                first = false;
            }
        }
    return best;
}

inline bool same_band_class(const Band& a, const Band& b) { return canonical_band(a).band == canonical_band(b).band; }

} // namespace affstr
