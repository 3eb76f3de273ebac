#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <new>
#include <span>
#include <vector>

namespace aokr {

using Complex = std::complex<double>;

/// 64-byte aligned storage so FFT plans can use their SIMD kernels on any
/// buffer.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlignment{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), kAlignment));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

using ComplexVector = std::vector<Complex, AlignedAllocator<Complex>>;

/// In-place 1D complex DFT of fixed length.
///
/// forward() uses the e^{-2πi jk/N} kernel, so a plane wave e^{+ikx} lands on a
/// positive-frequency bin. forward()/inverse() are unitary; the *_unscaled
/// variants skip the 1/√N factor for callers that fold it into another
/// multiply. Plans are cached per length and shared; execution is thread-safe.
class FourierTransform {
 public:
  explicit FourierTransform(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;
  void forward_unscaled(std::span<Complex> data) const;
  void inverse_unscaled(std::span<Complex> data) const;

 private:
  struct Plans;
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace aokr
