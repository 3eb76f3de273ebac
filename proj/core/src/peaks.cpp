#include "aokr/peaks.hpp"

#include <algorithm>

#include "aokr/error.hpp"

namespace aokr {

std::vector<std::size_t> local_maxima(std::span<const double> y) {
  std::vector<std::size_t> peaks;
  if (y.size() < 3) return peaks;
  std::size_t i = 1;
  const std::size_t last = y.size() - 1;
  while (i < last) {
    if (y[i - 1] < y[i]) {
      std::size_t ahead = i + 1;
      while (ahead < last && y[ahead] == y[i]) ++ahead;
      if (y[ahead] < y[i]) {
        peaks.push_back((i + ahead - 1) / 2);
        i = ahead;
        continue;
      }
    }
    ++i;
  }
  return peaks;
}

std::vector<std::size_t> circular_local_maxima(std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<std::size_t> peaks;
  if (n < 3) return peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = y[(i + n - 1) % n];
    const double next = y[(i + 1) % n];
    if (y[i] > prev && y[i] > next) peaks.push_back(i);
  }
  return peaks;
}

PeakShape peak_shape(std::span<const double> y, std::size_t index) {
  if (index >= y.size()) {
    throw DomainError("peak_shape: index out of range");
  }
  const double top = y[index];

  std::size_t left_base = index;
  double left_min = top;
  for (std::size_t i = index; i-- > 0;) {
    if (y[i] > top) break;
    if (y[i] < left_min) {
      left_min = y[i];
      left_base = i;
    }
  }
  std::size_t right_base = index;
  double right_min = top;
  for (std::size_t i = index + 1; i < y.size(); ++i) {
    if (y[i] > top) break;
    if (y[i] < right_min) {
      right_min = y[i];
      right_base = i;
    }
  }

  PeakShape shape;
  shape.index = index;
  shape.prominence = top - std::max(left_min, right_min);
  const double height = top - 0.5 * shape.prominence;

  std::size_t i = index;
  while (i > left_base && y[i] > height) --i;
  shape.left = static_cast<double>(i);
  if (y[i] < height) shape.left += (height - y[i]) / (y[i + 1] - y[i]);

  i = index;
  while (i < right_base && y[i] > height) ++i;
  shape.right = static_cast<double>(i);
  if (y[i] < height) shape.right -= (height - y[i]) / (y[i - 1] - y[i]);

  shape.width = shape.right - shape.left;
  return shape;
}

}  // namespace aokr
