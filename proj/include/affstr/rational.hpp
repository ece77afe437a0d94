#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace affstr {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Renders as "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline std::int64_t to_int64(const Rational& q)
{
    if (!is_integral(q) || !q.get_num().fits_slong_p()) throw std::domain_error("not a machine integer: " + to_string(q));
    return q.get_num().get_si();
}

} // namespace affstr
