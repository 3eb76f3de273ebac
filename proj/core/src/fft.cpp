#include "aokr/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "aokr/error.hpp"

namespace aokr {

namespace {

// The FFTW planner is not reentrant; only fftw_execute_* may run concurrently.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(std::size_t n) {
    std::lock_guard lock(planner_mutex());
    auto* buffer = fftw_alloc_complex(n);
    if (buffer == nullptr) {
      throw std::bad_alloc();
    }
    // FFTW_ESTIMATE keeps the chosen algorithm, and thus every output bit,
    // independent of timing measurements.
    const int len = static_cast<int>(n);
    forward = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buffer);
    if (forward == nullptr || backward == nullptr) {
      throw std::runtime_error("FFTW failed to create a plan");
    }
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
};

FourierTransform::FourierTransform(std::size_t n) : n_(n) {
  if (n == 0 || n > (1u << 30)) {
    throw DomainError("FourierTransform: unsupported length");
  }
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::shared_ptr<const Plans>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_shared<const Plans>(n);
  }
  plans_ = slot;
}

void FourierTransform::forward_unscaled(std::span<Complex> data) const {
  if (data.size() != n_) {
    throw ContractViolation("FourierTransform: length mismatch");
  }
  fftw_execute_dft(plans_->forward, as_fftw(data), as_fftw(data));
}

void FourierTransform::inverse_unscaled(std::span<Complex> data) const {
  if (data.size() != n_) {
    throw ContractViolation("FourierTransform: length mismatch");
  }
  fftw_execute_dft(plans_->backward, as_fftw(data), as_fftw(data));
}

void FourierTransform::forward(std::span<Complex> data) const {
  forward_unscaled(data);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (auto& v : data) v *= scale;
}

void FourierTransform::inverse(std::span<Complex> data) const {
  inverse_unscaled(data);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (auto& v : data) v *= scale;
}

}  // namespace aokr
