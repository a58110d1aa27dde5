#pragma once

#include <cstdint>

namespace equidist {

// Compensated accumulator. Empirical means are always accumulated in index
// order through this, so identical terms give bit-identical sums regardless
// of where the caller sits.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }

    double total() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

} // namespace equidist
