#include "equidist/unit_point.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace equidist {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    if (!all_digits(s) || s.size() > 20)
        throw ConfigError(std::string("invalid ") + what + ": '" + s + "'");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size())
        throw ConfigError(std::string("invalid ") + what + ": '" + s + "'");
    return v;
}

} // namespace

UnitPoint parse_unit_point(const std::string& text) {
    // Exact form k/2^p.
    if (const auto slash = text.find("/2^"); slash != std::string::npos) {
        const std::uint64_t k = parse_u64(text.substr(0, slash), "numerator");
        const std::uint64_t p = parse_u64(text.substr(slash + 3), "precision");
        if (p < 1 || p > kMaxPrecision)
            throw ConfigError("precision in '" + text + "' must be in [1, " +
                              std::to_string(kMaxPrecision) + "]");
        return UnitPoint(k, static_cast<std::uint32_t>(p));
    }
    // Decimal literal: digits, optionally '.' digits. Must land exactly on the grid.
    const auto dot = text.find('.');
    const std::string whole = (dot == std::string::npos) ? text : text.substr(0, dot);
    const std::string frac = (dot == std::string::npos) ? std::string() : text.substr(dot + 1);
    if (!all_digits(whole) || (dot != std::string::npos && frac.empty()))
        throw ConfigError("cannot parse point '" + text + "' (use k/2^p or a decimal)");
    const std::uint64_t w = parse_u64(whole, "integer part");
    if (w > 1 || (w == 1 && !frac.empty() && frac.find_first_not_of('0') != std::string::npos))
        throw ConfigError("point '" + text + "' lies outside [0,1]");
    if (frac.empty() || frac.find_first_not_of('0') == std::string::npos)
        return (w == 1) ? UnitPoint::one(1) : UnitPoint::zero(1);
    // Repeated doubling of the fractional digit string reads off binary digits.
    std::string digits = frac;
    std::uint64_t k = 0;
    std::uint32_t p = 0;
    while (digits.find_first_not_of('0') != std::string::npos) {
        if (++p > kMaxPrecision)
            throw ConfigError("point '" + text + "' is not representable on the dyadic grid");
        int carry = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            const int d = (*it - '0') * 2 + carry;
            *it = static_cast<char>('0' + d % 10);
            carry = d / 10;
        }
        k = (k << 1) | static_cast<std::uint64_t>(carry);
    }
    return UnitPoint(k, p);
}

std::string decimal_string(const UnitPoint& x) {
    // k/2^p has an exact decimal expansion with at most p fractional digits.
    if (x.numerator == 0) return "0";
    if (x.numerator == (std::uint64_t{1} << x.precision)) return "1";
    std::string out = "0.";
    std::uint64_t k = x.numerator;
    std::uint32_t p = x.precision;
    // Strip trailing zero bits so the expansion is as short as possible.
    while ((k & 1) == 0) {
        k >>= 1;
        --p;
    }
    // k / 2^p = k * 5^p / 10^p: long-multiply k by 5, p times, then pad.
    std::string digits = std::to_string(k);
    for (std::uint32_t i = 0; i < p; ++i) {
        int carry = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            const int d = (*it - '0') * 5 + carry;
            *it = static_cast<char>('0' + d % 10);
            carry = d / 10;
        }
        while (carry > 0) {
            digits.insert(digits.begin(), static_cast<char>('0' + carry % 10));
            carry /= 10;
        }
    }
    if (digits.size() < p) digits.insert(digits.begin(), p - digits.size(), '0');
    out += digits;
    return out;
}

} // namespace equidist
