#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace relroot {

/// All arithmetic in this library is exact. Magnitudes stay tiny (root
/// coefficients and character exponents below a few hundred), so a
/// rational over 64-bit integers is ample.
using Int = long long;
using Rat = boost::rational<Int>;

inline Int rat_floor(const Rat& x) {
    Int q = x.numerator() / x.denominator();
    if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
    return q;
}

inline Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

/// Canonical text form: "n" for integers, "n/d" otherwise (lowest terms,
/// positive denominator — boost::rational keeps values normalized).
inline std::string to_string(const Rat& x) {
    std::string s = std::to_string(x.numerator());
    if (x.denominator() != 1) s += "/" + std::to_string(x.denominator());
    return s;
}

/// Parses "n" or "n/d". Throws std::invalid_argument on malformed input
/// or zero denominator.
inline Rat parse_rational(const std::string& text) {
    auto bad = [&] { throw std::invalid_argument("malformed rational: '" + text + "'"); };
    auto parse_int = [&](const std::string& part) -> Int {
        if (part.empty()) bad();
        std::size_t pos = 0;
        Int v = 0;
        try {
            v = std::stoll(part, &pos);
        } catch (const std::exception&) {
            bad();
        }
        if (pos != part.size()) bad();
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) bad();
    return Rat(num, den);
}

}  // namespace relroot
