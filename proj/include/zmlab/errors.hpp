#pragma once

#include <stdexcept>
#include <string>

namespace zmlab {

/// Raised when a radial integral does not settle: either the truncation
/// window kept growing with non-decreasing increments, or the subdivision
/// budget ran out. Carries what had been accumulated so far.
class divergence_error : public std::runtime_error {
public:
  divergence_error(const std::string& what, double partial_sum, double last_increment_ratio)
      : std::runtime_error(what), partial_sum_(partial_sum), last_increment_ratio_(last_increment_ratio) {}

  double partial_sum() const noexcept { return partial_sum_; }
  double last_increment_ratio() const noexcept { return last_increment_ratio_; }

private:
  double partial_sum_;
  double last_increment_ratio_;
};

/// The Aharonov-Casher construction with a constant polynomial factor needs
/// flux > 1; anything less has no square-integrable zero mode.
class no_zero_mode_error : public std::domain_error {
public:
  explicit no_zero_mode_error(const std::string& what) : std::domain_error(what) {}
};

} // namespace zmlab
