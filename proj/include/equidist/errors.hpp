#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace equidist {

// Invalid parameters or mismatched configuration. The CLI maps this to exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An open interval holds no grid point of the requested tag class.
// `index` is the 1-based sequence index that failed (0 when the failure did
// not come from a sequence construction).
struct ResolutionExhausted : std::runtime_error {
    explicit ResolutionExhausted(const std::string& what, std::uint64_t failing_index = 0)
        : std::runtime_error(what), index(failing_index) {}

    std::uint64_t index;
};

} // namespace equidist
