#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "ehq/errors.hpp"

namespace ehq {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

// Largest integer <= r.
inline Int rat_floor(const Rational& r) {
    Int n = rat_num(r), d = rat_den(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

// Fractional part in [0,1).
inline Rational rat_frac(const Rational& r) { return r - Rational(rat_floor(r)); }

inline double rat_double(const Rational& r) { return r.convert_to<double>(); }

// Serialization used in configs/reports: "n" or "n/d".
inline std::string rat_string(const Rational& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rational rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw ConfigError("rational with zero denominator: " + s);
        return Rational(n, d);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse rational: '" + s + "'");
    }
}

}  // namespace ehq
