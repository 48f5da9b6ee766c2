#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "sftcomb/error.hpp"

namespace sftcomb {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Canonical rational strings: "p" for integers, "p/q" with q > 1 and
// gcd(p, q) = 1 otherwise. parse_rational rejects anything non-canonical,
// so "2/4", "3/1" and "1/-2" are all invalid.
inline std::string format_rational(const Rational& q)
{
    if (den(q) == 1)
        return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline Rational parse_rational(const std::string& s)
{
    auto bad = [&](const char* why) -> Error {
        return Error("invalid rational '" + s + "': " + why);
    };
    auto digits = [&](const std::string& t) {
        if (t.empty())
            throw bad("empty numeric part");
        std::size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size())
            throw bad("sign without digits");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw bad("non-digit character");
        if (t[t[0] == '-' ? 1 : 0] == '0' && t.size() > ((t[0] == '-') ? 2u : 1u))
            throw bad("leading zero");
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        digits(s);
        return Rational(Int(s));
    }
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    digits(p);
    digits(q);
    Int ip(p), iq(q);
    if (iq <= 1)
        throw bad("denominator must be > 1 in 'p/q' form");
    if (boost::multiprecision::gcd(boost::multiprecision::abs(ip), iq) != 1)
        throw bad("not in lowest terms");
    return Rational(ip, iq);
}

inline Int lcm_of_denominators(const std::vector<Rational>& values)
{
    Int m = 1;
    for (const auto& v : values)
        m = boost::multiprecision::lcm(m, den(v));
    return m;
}

inline bool is_prime(const Int& n)
{
    if (n < 2)
        return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Smallest prime strictly greater than n.
inline Int next_prime_above(Int n)
{
    if (n < 1)
        n = 1;
    Int c = n + 1;
    while (!is_prime(c))
        ++c;
    return c;
}

}  // namespace sftcomb
