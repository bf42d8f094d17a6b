#include "bibliorank/exact_sum.hpp"

#include <cmath>

#include "bibliorank/error.hpp"

namespace bibliorank {

void ExactSum::add(double x) {
  std::size_t i = 0;
  for (double y : partials_) {
    if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
    const double hi = x + y;
    const double lo = y - (hi - x);
    if (lo != 0.0) partials_[i++] = lo;
    x = hi;
  }
  partials_.resize(i);
  partials_.push_back(x);
}

void ExactSum::add_product(double a, double b) {
  const double head = a * b;
  const double tail = std::fma(a, b, -head);
  add(head);
  if (tail != 0.0) add(tail);
}

double ExactSum::value() const {
  std::size_t n = partials_.size();
  if (n == 0) return 0.0;
  double hi = partials_[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials_[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  // Round-half-even correction when the discarded tail sits exactly on a
  // halfway point and the next partial pushes it over.
  if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    const double yr = x - hi;
    if (y == yr) hi = x;
  }
  return hi;
}

double exact_sum(std::span<const double> values) {
  ExactSum sum;
  for (double v : values) sum.add(v);
  return sum.value();
}

ExactValue::ExactValue(double x) {
  if (x != 0.0) terms_.push_back(x);
}

ExactValue::ExactValue(const ExactSum& sum, std::int64_t divisor)
    : terms_(sum.partials().begin(), sum.partials().end()), divisor_(divisor) {
  if (divisor < 1) throw Error(ErrorCode::domain, "exact value divisor must be positive");
}

double ExactValue::value() const {
  ExactSum sum;
  for (double t : terms_) sum.add(t);
  return divisor_ == 1 ? sum.value() : sum.value() / static_cast<double>(divisor_);
}

// sign(a/p - b/q) = sign(a*q - b*p) for positive p, q. Divisors are counts,
// far below 2^53, so they convert exactly and every product is exact.
std::strong_ordering operator<=>(const ExactValue& a, const ExactValue& b) {
  ExactSum diff;
  const auto q = static_cast<double>(b.divisor_);
  const auto p = static_cast<double>(a.divisor_);
  for (double t : a.terms_) diff.add_product(t, q);
  for (double t : b.terms_) diff.add_product(-t, p);
  const double sign = diff.value();
  if (sign < 0.0) return std::strong_ordering::less;
  if (sign > 0.0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace bibliorank
