#include "aokr/bessel.hpp"

#include <cmath>
#include <cstdlib>

#include "aokr/error.hpp"

namespace aokr {

namespace {

constexpr double kRescaleAbove = 1e250;

// Start index for the downward recurrence: far enough past both the order
// and the turning point |x| that the discarded tail is below 1e-17.
int recurrence_start(int max_order, double ax) {
  const double reach = std::max(static_cast<double>(max_order), ax);
  int start = static_cast<int>(std::ceil(reach + 30.0 + 10.0 * std::sqrt(reach)));
  return start + (start % 2);  // even, so the normalisation sum ends on J_0
}

}  // namespace

std::vector<double> bessel_j_sequence(int max_order, double x) {
  if (max_order < 0) {
    throw DomainError("bessel_j_sequence: max_order must be >= 0");
  }
  if (!std::isfinite(x)) {
    throw DomainError("bessel_j_sequence: argument must be finite");
  }
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double ax = std::abs(x);
  const int start = recurrence_start(max_order, ax);

  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start] = 1e-300;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = (2.0 * k / ax) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > kRescaleAbove) {
      for (int i = k - 1; i <= start; ++i) j[i] /= kRescaleAbove;
      norm /= kRescaleAbove;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j[k - 1];
  }
  norm += j[0];

  for (int n = 0; n <= max_order; ++n) {
    double v = j[n] / norm;
    if (x < 0.0 && n % 2 != 0) v = -v;
    out[n] = v;
  }
  return out;
}

double bessel_j(int order, double x) {
  if (std::abs(order) > kBesselMaxOrder) {
    throw DomainError("bessel_j: |order| must be <= 200");
  }
  if (!(std::abs(x) <= kBesselMaxArgument)) {
    throw DomainError("bessel_j: |argument| must be <= 100");
  }
  const int n = std::abs(order);
  double v = bessel_j_sequence(n, x)[n];
  if (order < 0 && n % 2 != 0) v = -v;
  return v;
}

}  // namespace aokr
