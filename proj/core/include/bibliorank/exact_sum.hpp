#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace bibliorank {

/// Accumulates doubles without intermediate rounding and returns the sum
/// correctly rounded to nearest (Shewchuk's partials, as in Python's
/// math.fsum). The result depends only on the multiset of addends, never on
/// their order, which is what lets indicator sums be compared for exact ties.
class ExactSum {
 public:
  void add(double x);

  /// Adds the exact product a*b (split into head and FMA tail).
  void add_product(double a, double b);

  double value() const;
  bool empty() const noexcept { return partials_.empty(); }
  /// Non-overlapping terms whose exact sum is the accumulated value.
  std::span<const double> partials() const noexcept { return partials_; }

 private:
  std::vector<double> partials_;
};

double exact_sum(std::span<const double> values);

/// An exact sum of doubles divided by a positive integer. Comparisons are
/// exact: two values tie only when the underlying rationals are equal, even
/// if they round to different doubles or to the same one.
class ExactValue {
 public:
  ExactValue() = default;
  explicit ExactValue(double x);
  /// Throws Error{domain} for a divisor below 1.
  explicit ExactValue(const ExactSum& sum, std::int64_t divisor = 1);

  double value() const;

  friend std::strong_ordering operator<=>(const ExactValue& a, const ExactValue& b);
  friend bool operator==(const ExactValue& a, const ExactValue& b) { return (a <=> b) == 0; }

 private:
  std::vector<double> terms_;
  std::int64_t divisor_ = 1;
};

}  // namespace bibliorank
