#include "jcwave/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>
#include <utility>

namespace jcwave {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n, std::size_t batch) : n_(n), batch_(batch) {
  buffer_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n * batch));
  if (buffer_ == nullptr) throw std::bad_alloc();
  auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
  const int len = static_cast<int>(n);
  const int howmany = static_cast<int>(batch);
  // FFTW_ESTIMATE keeps plan choice (and therefore rounding) identical between runs.
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_many_dft(1, &len, howmany, raw, nullptr, 1, len, raw, nullptr, 1, len,
                                     FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_many_dft(1, &len, howmany, raw, nullptr, 1, len, raw, nullptr, 1, len,
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
  for (std::size_t i = 0; i < n * batch; ++i) buffer_[i] = 0.0;
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : n_(other.n_),
      batch_(other.batch_),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    release();
    n_ = other.n_;
    batch_ = other.batch_;
    buffer_ = std::exchange(other.buffer_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    backward_plan_ = std::exchange(other.backward_plan_, nullptr);
  }
  return *this;
}

void FftPlan::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (backward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  if (buffer_ != nullptr) fftw_free(buffer_);
  forward_plan_ = backward_plan_ = nullptr;
  buffer_ = nullptr;
}

void FftPlan::forward() noexcept { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void FftPlan::backward() noexcept { fftw_execute(static_cast<fftw_plan>(backward_plan_)); }

}  // namespace jcwave
