#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace jcwave {

/// In-place batched complex FFT of `batch` contiguous length-n rows, backed by
/// FFTW. Owns an aligned work buffer; transforms are unnormalized. A plan is
/// not shareable between threads, but separate plans may run concurrently.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n, std::size_t batch = 2);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::span<std::complex<double>> buffer() noexcept { return {buffer_, n_ * batch_}; }
  std::size_t length() const noexcept { return n_; }
  std::size_t batch() const noexcept { return batch_; }

  /// sum_j x_j exp(-2 pi i jk/n) on each row of the buffer.
  void forward() noexcept;
  /// sum_k x_k exp(+2 pi i jk/n) on each row of the buffer.
  void backward() noexcept;

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  std::size_t batch_ = 0;
  std::complex<double>* buffer_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

}  // namespace jcwave
