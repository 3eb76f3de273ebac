#pragma once

#include <vector>

namespace aokr {

inline constexpr int kBesselMaxOrder = 200;
inline constexpr double kBesselMaxArgument = 100.0;

/// Ordinary Bessel function of the first kind J_n(x), any sign of n and x.
/// Throws DomainError for |n| > 200 or |x| > 100.
double bessel_j(int order, double x);

/// J_0(x) .. J_max_order(x) from a single downward (Miller) recurrence,
/// normalised with J_0 + 2ΣJ_2k = 1. No range limit beyond max_order >= 0.
std::vector<double> bessel_j_sequence(int max_order, double x);

}  // namespace aokr
