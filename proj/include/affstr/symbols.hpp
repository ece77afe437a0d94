#pragma once

#include "affstr/bands.hpp"

namespace affstr {

/// One indecomposable summand: a string up to inversion, or a band class with multiplicity m.
struct Piece {
    bool band = false;
    std::vector<Letter> letters;  ///< canonical representative
    int vertex = -1;              ///< trivial strings only
    int m = 1;

    bool operator==(const Piece&) const = default;
    auto operator<=>(const Piece& o) const
    {
        if (auto c = band <=> o.band; c != 0) return c;
        if (auto c = letters.size() <=> o.letters.size(); c != 0) return c;
        if (auto c = letters <=> o.letters; c != 0) return c;
        if (auto c = vertex <=> o.vertex; c != 0) return c;
        return m <=> o.m;
    }
};

/// An isomorphism class: the sorted multiset of its indecomposable summands (empty = zero module).
struct Symbol {
    std::vector<Piece> parts;

    bool is_zero() const { return parts.empty(); }
    bool is_indecomposable() const { return parts.size() == 1; }
    bool operator==(const Symbol&) const = default;
    auto operator<=>(const Symbol&) const = default;
};

inline Piece string_piece(const Word& w)
{
    const Word c = canonical_string(w);
    return c.is_trivial() ? Piece{false, {}, c.vertex, 1} : Piece{false, c.letters, -1, 1};
}

inline Piece band_piece(const Band& b, int m = 1) { return Piece{true, canonical_band(b).band.letters, -1, m}; }

inline Symbol make_symbol(std::vector<Piece> parts)
{
    std::sort(parts.begin(), parts.end());
    return Symbol{std::move(parts)};
}

inline Symbol string_symbol(const Word& w) { return Symbol{{string_piece(w)}}; }
inline Symbol band_symbol(const Band& b, int m = 1) { return Symbol{{band_piece(b, m)}}; }

inline Symbol direct_sum(const Symbol& a, const Symbol& b)
{
    auto parts = a.parts;
    parts.insert(parts.end(), b.parts.begin(), b.parts.end());
    return make_symbol(std::move(parts));
}

inline Word piece_word(const Piece& p)
{
    if (p.band) throw Error(ErrorCode::Internal, "band piece has no word");
    return p.letters.empty() ? Word::trivial(p.vertex, 1) : Word{p.letters, -1, 0};
}

inline Band piece_band(const Piece& p)
{
    if (!p.band) throw Error(ErrorCode::Internal, "string piece has no band");
    return Band{p.letters};
}

inline std::string to_string(const CartanData& cd, const Piece& p)
{
    if (!p.band) return to_string(cd, piece_word(p));
    std::string s = to_string(cd, piece_band(p));
    if (p.m > 1) s += "^" + std::to_string(p.m);
    return s;
}

inline std::string to_string(const CartanData& cd, const Symbol& s)
{
    if (s.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < s.parts.size(); ++i) out += (i ? " + " : "") + to_string(cd, s.parts[i]);
    return out;
}

inline RootVector rank_vector(const CartanData& cd, const Piece& p)
{
    if (p.band) return static_cast<std::int64_t>(p.m) * rank_vector(cd, piece_band(p));
    return rank_vector(cd, piece_word(p));
}

inline RootVector rank_vector(const CartanData& cd, const Symbol& s)
{
    RootVector r(cd.rank(), 0);
    for (const auto& p : s.parts) r = r + rank_vector(cd, p);
    return r;
}

/// Total dimension of the module.
inline int total_dim(const CartanData&, const Piece& p)
{
    return p.band ? p.m * static_cast<int>(p.letters.size()) : static_cast<int>(p.letters.size()) + 1;
}

inline int total_dim(const CartanData& cd, const Symbol& s)
{
    int d = 0;
    for (const auto& p : s.parts) d += total_dim(cd, p);
    return d;
}

} // namespace affstr
