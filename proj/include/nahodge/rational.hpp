#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "nahodge/errors.hpp"

namespace nahodge {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p", "p/q" into a normalized rational.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    if (s.empty())
        throw PreconditionError("empty rational literal");
    if (s.front() == '+')
        s.erase(0, 1);
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view d, bool allow_sign) {
        if (d.empty())
            return false;
        std::size_t k = 0;
        if (allow_sign && d[0] == '-')
            k = 1;
        if (k == d.size())
            return false;
        for (; k < d.size(); ++k)
            if (d[k] < '0' || d[k] > '9')
                return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!digits_ok(s, true))
            throw PreconditionError("bad rational literal '" + s + "'");
        return Rational(Integer(s));
    }
    std::string_view num(s.data(), slash), den(s.data() + slash + 1, s.size() - slash - 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw PreconditionError("bad rational literal '" + s + "'");
    Integer d{std::string(den)};
    if (d == 0)
        throw PreconditionError("zero denominator in '" + s + "'");
    Rational q(Integer(std::string(num)), d);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational &q) { return q.get_str(); }

inline bool is_zero(const Rational &q) { return sgn(q) == 0; }
inline bool is_zero(const Integer &z) { return sgn(z) == 0; }

} // namespace nahodge
