#pragma once

#include "affstr/cartan.hpp"
#include "affstr/errors.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace affstr {

/// Arrow index: 0 is eps_0, j in 1..n is eta_j, n+1 is eps_n.
struct Letter {
    int arrow = 0;
    int sign = 1;

    Letter inv() const { return {arrow, -sign}; }
    bool direct() const { return sign > 0; }
    int code() const { return 2 * arrow + (sign < 0 ? 1 : 0); }
    auto operator<=>(const Letter& o) const { return code() <=> o.code(); }
    bool operator==(const Letter&) const = default;
};

inline bool is_eps(const CartanData& cd, int arrow) { return arrow == 0 || arrow == cd.n + 1; }
inline int eps_vertex(const CartanData& cd, int arrow) { return arrow == 0 ? 0 : cd.n; }

inline int arrow_target(const CartanData& cd, int a) { return is_eps(cd, a) ? eps_vertex(cd, a) : cd.eta_target(a); }
inline int arrow_source(const CartanData& cd, int a) { return is_eps(cd, a) ? eps_vertex(cd, a) : cd.eta_source(a); }

/// Side (-1 lower, +1 upper) on which an arrow meets a vertex; loops take the free slot.
inline int arrow_side(const CartanData& cd, int a, int v)
{
    if (a == 0) return -1;
    if (a == cd.n + 1) return 1;
    return v == a - 1 ? 1 : -1;
}

inline int letter_t(const CartanData& cd, Letter l) { return l.sign > 0 ? arrow_target(cd, l.arrow) : arrow_source(cd, l.arrow); }
inline int letter_s(const CartanData& cd, Letter l) { return l.sign > 0 ? arrow_source(cd, l.arrow) : arrow_target(cd, l.arrow); }

/// A string. The empty word carries a vertex and a direction sign (the trivial words 1_v and 1_v^-1).
struct Word {
    std::vector<Letter> letters;
    int vertex = -1;
    int dir = 0;

    static Word trivial(int v, int d = 1) { return Word{{}, v, d}; }
    bool is_trivial() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
    const Letter& operator[](std::size_t i) const { return letters[i]; }
    bool operator==(const Word&) const = default;
    auto operator<=>(const Word& o) const
    {
        if (auto c = letters.size() <=> o.letters.size(); c != 0) return c;
        if (auto c = letters <=> o.letters; c != 0) return c;
        if (auto c = vertex <=> o.vertex; c != 0) return c;
        return dir <=> o.dir;
    }
};

inline int word_t(const CartanData& cd, const Word& w) { return w.is_trivial() ? w.vertex : letter_t(cd, w.letters.front()); }
inline int word_s(const CartanData& cd, const Word& w) { return w.is_trivial() ? w.vertex : letter_s(cd, w.letters.back()); }

/// Side toward which the walk leaves its start.
inline int departure_side(const CartanData& cd, const Word& w)
{
    if (w.is_trivial()) return w.dir;
    return arrow_side(cd, w.letters.front().arrow, word_t(cd, w));
}

/// Side from which the walk reaches its end.
inline int arrival_side(const CartanData& cd, const Word& w)
{
    if (w.is_trivial()) return -w.dir;
    return arrow_side(cd, w.letters.back().arrow, word_s(cd, w));
}

inline std::string letter_text(const CartanData& cd, Letter l)
{
    std::string s = l.arrow == 0 ? "e0" : l.arrow == cd.n + 1 ? "en" : "h" + std::to_string(l.arrow);
    return l.sign < 0 ? s + "-" : s;
}

inline std::string to_string(const CartanData& cd, const Word& w)
{
    if (w.is_trivial()) return "1_" + std::to_string(w.vertex) + (w.dir < 0 ? "-" : "");
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + letter_text(cd, w[i]);
    return s;
}

inline Letter parse_letter(const CartanData& cd, std::string tok)
{
    int sign = 1;
    if (!tok.empty() && tok.back() == '-') {
        sign = -1;
        tok.pop_back();
    }
    if (tok == "e0") return {0, sign};
    if (tok == "en" || tok == "e" + std::to_string(cd.n)) return {cd.n + 1, sign};
    if (tok.size() >= 2 && tok[0] == 'h') {
        std::size_t used = 0;
        int j = 0;
        try {
            j = std::stoi(tok.substr(1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used + 1 == tok.size() && j >= 1 && j <= cd.n) return {j, sign};
    }
    throw Error(ErrorCode::ParseError, "bad letter '" + tok + "'");
}

inline std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

/// Checks the two string conditions; returns the first failing position.
inline std::optional<std::pair<ErrorCode, int>> check_letters(const CartanData& cd, const std::vector<Letter>& ls)
{
    for (std::size_t j = 0; j < ls.size(); ++j) {
        if (ls[j].arrow < 0 || ls[j].arrow > cd.n + 1 || (ls[j].sign != 1 && ls[j].sign != -1))
            return std::pair{ErrorCode::ParseError, static_cast<int>(j)};
        if (j == 0) continue;
        const Letter a = ls[j - 1], b = ls[j];
        if (letter_s(cd, a) != letter_t(cd, b)) return std::pair{ErrorCode::NonComposable, static_cast<int>(j)};
        if (a.arrow == b.arrow) return std::pair{ErrorCode::ForbiddenPair, static_cast<int>(j)};
    }
    return std::nullopt;
}

inline Word validate(const CartanData& cd, std::vector<Letter> ls)
{
    if (ls.empty()) throw Error(ErrorCode::ParseError, "empty letter sequence needs a vertex");
    if (auto bad = check_letters(cd, ls)) throw Error(bad->first, "at letter " + std::to_string(bad->second), bad->second);
    return Word{std::move(ls), -1, 0};
}

inline bool is_valid(const CartanData& cd, const Word& w)
{
    if (w.is_trivial()) return w.vertex >= 0 && w.vertex <= cd.n && (w.dir == 1 || w.dir == -1);
    return !check_letters(cd, w.letters) && w.vertex == -1 && w.dir == 0;
}

inline Word parse_word(const CartanData& cd, const std::string& text)
{
    if (text.rfind("1_", 0) == 0) {
        std::string rest = text.substr(2);
        int dir = 1;
        if (!rest.empty() && rest.back() == '-') {
            dir = -1;
            rest.pop_back();
        }
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(rest, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != rest.size() || used == 0 || v < 0 || v > cd.n) throw Error(ErrorCode::ParseError, "bad trivial word '" + text + "'");
        return Word::trivial(v, dir);
    }
    std::vector<Letter> ls;
    for (const auto& tok : split(text, '.')) ls.push_back(parse_letter(cd, tok));
    return validate(cd, std::move(ls));
}

inline Word inverse(const Word& w)
{
    if (w.is_trivial()) return Word::trivial(w.vertex, -w.dir);
    Word out;
    out.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(it->inv());
    return out;
}

inline std::optional<ErrorCode> concat_error(const CartanData& cd, const Word& v, const Word& w)
{
    if (word_s(cd, v) != word_t(cd, w)) return ErrorCode::IncompatibleEndpoints;
    if (arrival_side(cd, v) == departure_side(cd, w)) return ErrorCode::ForbiddenJunction;
    return std::nullopt;
}

inline bool can_concat(const CartanData& cd, const Word& v, const Word& w) { return !concat_error(cd, v, w); }

inline Word concat(const CartanData& cd, const Word& v, const Word& w)
{
    if (auto e = concat_error(cd, v, w)) throw Error(*e, to_string(cd, v) + " * " + to_string(cd, w));
    if (v.is_trivial()) return w;
    if (w.is_trivial()) return v;
    Word out = v;
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

inline Word concat(const CartanData& cd, std::initializer_list<Word> parts)
{
    auto it = parts.begin();
    Word out = *it++;
    for (; it != parts.end(); ++it) out = concat(cd, out, *it);
    return out;
}

inline Word letter_word(Letter l) { return Word{{l}, -1, 0}; }
inline Word eta_word(int j, int sign) { return letter_word({j, sign}); }

inline bool is_locally_free(const CartanData& cd, const Word& w)
{
    if (w.is_trivial()) return w.vertex >= 1 && w.vertex <= cd.n - 1;
    const int t = word_t(cd, w), s = word_s(cd, w);
    if (cd.is_loop_vertex(t) && !is_eps(cd, w.letters.front().arrow)) return false;
    if (cd.is_loop_vertex(s) && !is_eps(cd, w.letters.back().arrow)) return false;
    return true;
}

/// Vertex sequence t(w_1), s(w_1), ..., s(w_l).
inline std::vector<int> walk(const CartanData& cd, const Word& w)
{
    std::vector<int> v{word_t(cd, w)};
    for (const auto& l : w.letters) v.push_back(letter_s(cd, l));
    return v;
}

inline RootVector halve_visits(const CartanData& cd, RootVector visits)
{
    for (int i : {0, cd.n}) {
        if (visits[i] % 2 != 0) throw Error(ErrorCode::NonIntegralRank, "odd visit count at vertex " + std::to_string(i));
        visits[i] /= 2;
    }
    return visits;
}

inline RootVector rank_vector(const CartanData& cd, const Word& w)
{
    RootVector visits(cd.rank(), 0);
    for (int v : walk(cd, w)) ++visits[v];
    return halve_visits(cd, std::move(visits));
}

/// Dimension vector of the string module.
inline RootVector dimension_vector(const CartanData& cd, const Word& w)
{
    RootVector visits(cd.rank(), 0);
    for (int v : walk(cd, w)) ++visits[v];
    return visits;
}

struct EndData {
    int s_prime = 0;
    int s_sign = 0;
    int t_prime = 0;
    int t_sign = 0;
    bool operator==(const EndData&) const = default;
};

/// All (j, e) with w * eta_j^e a string.
inline std::vector<std::pair<int, int>> right_extensions(const CartanData& cd, const Word& w)
{
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= cd.n; ++j)
        for (int e : {1, -1})
            if (can_concat(cd, w, eta_word(j, e))) out.emplace_back(j, e);
    return out;
}

inline std::pair<int, int> right_end(const CartanData& cd, const Word& w)
{
    const auto ext = right_extensions(cd, w);
    if (ext.size() != 1)
        throw Error(ErrorCode::Internal, to_string(cd, w) + " has " + std::to_string(ext.size()) + " eta extensions");
    return ext.front();
}

inline EndData end_data(const CartanData& cd, const Word& w)
{
    if (!is_locally_free(cd, w)) throw Error(ErrorCode::NotLocallyFree, to_string(cd, w));
    const auto [sp, ss] = right_end(cd, w);
    const auto [tp, ts] = right_end(cd, inverse(w));
    return {sp, ss, tp, ts};
}

/// Letter codes of the lexicographically smaller of w and w^-1; trivial words map to a vertex tag.
inline std::vector<int> canonical_key(const Word& w)
{
    if (w.is_trivial()) return {-1 - w.vertex};
    std::vector<int> a, b;
    for (const auto& l : w.letters) a.push_back(l.code());
    for (const auto& l : inverse(w).letters) b.push_back(l.code());
    return std::min(a, b);
}

inline Word canonical_string(const Word& w)
{
    if (w.is_trivial()) return Word::trivial(w.vertex, 1);
    const Word inv = inverse(w);
    return inv.letters < w.letters ? inv : w;
}

inline bool same_up_to_inverse(const Word& a, const Word& b) { return canonical_key(a) == canonical_key(b); }

} // namespace affstr
