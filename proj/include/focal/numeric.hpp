#pragma once

#include <cmath>
#include <cstddef>

namespace focal {

/// Neumaier-compensated accumulator. The double-sum inertias behind the
/// acceptance figures must stay stable at n = 435, p = 16, which plain
/// left-to-right accumulation does not guarantee at the required tolerances.
class KahanSum {
 public:
  void add(double term) noexcept {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Clamps tiny negative round-off to zero so downstream square roots stay real.
inline double clamp_roundoff(double value, double slack = 1e-10) noexcept {
  return (value < 0.0 && value >= -slack) ? 0.0 : value;
}

}  // namespace focal
