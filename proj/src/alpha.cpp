#include "equidist/alpha.hpp"

#include <cctype>
#include <vector>

#include "equidist/errors.hpp"

namespace equidist {

namespace {

struct NamedAlpha {
    const char* name;
    std::uint64_t hi, lo;
};

// Fractional parts to 128 bits (truncated).
constexpr NamedAlpha kNamed[] = {
    {"sqrt2", 0x6A09E667F3BCC908ull, 0xB2FB1366EA957D3Eull},  // sqrt(2) - 1
    {"sqrt3", 0xBB67AE8584CAA73Bull, 0x25742D7078B83B89ull},  // sqrt(3) - 1
    {"golden", 0x9E3779B97F4A7C15ull, 0xF39CC0605CEDC834ull}, // (1+sqrt(5))/2 - 1
    {"e", 0xB7E151628AED2A6Aull, 0xBF7158809CF4F3C7ull},      // e - 2
    {"pi", 0x243F6A8885A308D3ull, 0x13198A2E03707344ull},     // pi - 3
};

// Fractional decimal digits -> truncated 128-bit binary fraction, by 128
// rounds of digit-vector doubling.
uint128 decimal_digits_to_frac128(std::vector<int> digits) {
    uint128 out = 0;
    for (int bit = 0; bit < 128; ++bit) {
        int carry = 0;
        for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
            const int d = digits[static_cast<std::size_t>(i)] * 2 + carry;
            digits[static_cast<std::size_t>(i)] = d % 10;
            carry = d / 10;
        }
        out = (out << 1) | static_cast<unsigned>(carry);
    }
    return out;
}

} // namespace

Alpha parse_alpha(std::string_view s) {
    for (const auto& named : kNamed) {
        if (s == named.name)
            return Alpha{std::string(s), named.hi, named.lo};
    }

    // decimal literal: digits [ '.' digits ]
    bool seen_dot = false, seen_digit = false;
    std::vector<int> frac_digits;
    for (const char ch : s) {
        if (ch == '.') {
            if (seen_dot)
                throw ConfigError("invalid alpha literal: " + std::string(s));
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            seen_digit = true;
            if (seen_dot)
                frac_digits.push_back(ch - '0');
        } else {
            throw ConfigError("alpha must be a named constant (sqrt2, sqrt3, golden, e, pi) "
                              "or a decimal literal, got: " +
                              std::string(s));
        }
    }
    if (!seen_digit)
        throw ConfigError("alpha must be a named constant or a decimal literal, got: " +
                          std::string(s));

    // the integer part is irrelevant mod 1
    const uint128 frac = frac_digits.empty() ? 0 : decimal_digits_to_frac128(std::move(frac_digits));
    return Alpha{std::string(s), static_cast<std::uint64_t>(frac >> 64),
                 static_cast<std::uint64_t>(frac)};
}

} // namespace equidist
