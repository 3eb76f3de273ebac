#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aokr {

/// Indices of interior local maxima. A flat top counts once, at the middle
/// of the plateau.
std::vector<std::size_t> local_maxima(std::span<const double> y);

/// Local maxima of a periodic sequence (y[size] wraps to y[0]).
std::vector<std::size_t> circular_local_maxima(std::span<const double> y);

struct PeakShape {
  std::size_t index = 0;
  double prominence = 0.0;
  /// Full width at half prominence, in samples (linear interpolation).
  double width = 0.0;
  double left = 0.0;
  double right = 0.0;
};

/// Prominence and width of the peak at `index`: the reference level is the
/// higher of the minima on either side before the curve rises above the
/// peak (or the ends of the data).
PeakShape peak_shape(std::span<const double> y, std::size_t index);

}  // namespace aokr
