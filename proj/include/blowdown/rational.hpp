#pragma once

// Exact arbitrary-precision integers and rationals. Every coordinate,
// area and volume in the library is one of these; nothing is rounded
// except the explicit float point map in domain.hpp.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace blowdown {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

// Wire format: "p/q" in lowest terms, "/q" omitted when q = 1.
inline std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

inline Int parse_int(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bare sign is not an integer");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            throw std::invalid_argument("bad integer literal '" + std::string(s) + "'");
    return Int(std::string(s));
}

inline Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    std::string_view den_part = s.substr(slash + 1);
    if (!den_part.empty() && den_part[0] == '-')
        throw std::invalid_argument("denominator must be positive in '" + std::string(s) + "'");
    Int den = parse_int(den_part);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
}

namespace detail {
inline Int pow10(int k) {
    Int p = 1;
    for (int i = 0; i < k; ++i) p *= 10;
    return p;
}
}  // namespace detail

// Exact decimal rendering with at most `sig` significant digits
// (round half up). Used only for SVG coordinates; the value printed is
// the correctly rounded decimal of the exact rational, so the output is
// byte-stable across runs.
inline std::string format_decimal(const Rational& r, int sig = 6) {
    if (sig < 1) throw std::invalid_argument("format_decimal: sig must be >= 1");
    if (r == 0) return "0";
    const bool neg = r < 0;
    Int p = abs(numerator(r));
    Int q = denominator(r);

    // e = floor(log10(p/q)), found by exact comparison
    int e = static_cast<int>(p.str().size()) - static_cast<int>(q.str().size());
    auto geq_pow10 = [&](int k) {  // p/q >= 10^k ?
        return k >= 0 ? p >= q * detail::pow10(k) : p * detail::pow10(-k) >= q;
    };
    while (!geq_pow10(e)) --e;
    while (geq_pow10(e + 1)) ++e;

    // m = round(p/q * 10^(sig-1-e)), an integer with exactly sig digits
    int shift = sig - 1 - e;
    Int num = p, den = q;
    if (shift >= 0) num *= detail::pow10(shift);
    else den *= detail::pow10(-shift);
    Int m = (2 * num + den) / (2 * den);
    if (m == detail::pow10(sig)) {
        m = detail::pow10(sig - 1);
        ++e;
    }

    std::string digits = m.str();
    std::string out;
    if (e >= sig - 1) {
        out = digits + std::string(static_cast<std::size_t>(e - sig + 1), '0');
    } else if (e >= 0) {
        out = digits.substr(0, static_cast<std::size_t>(e + 1)) + "." +
              digits.substr(static_cast<std::size_t>(e + 1));
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

}  // namespace blowdown
