#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace jcwave {

/// Spacing of uniformly sampled times. Throws DomainError for fewer than two
/// samples, non-increasing or non-uniform times (1e-9 relative).
double uniform_spacing(std::span<const double> times);

/// Scalar observables recorded at one time.
struct Record {
  double t = 0.0;
  double norm = 0.0;
  double energy = 0.0;
  double inversion = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double entropy = 0.0;
  std::complex<double> autocorrelation{0.0, 0.0};
  double excitation = 0.0;
  std::optional<double> fidelity;
  std::optional<double> h_cor;
};

/// Uniformly sampled sequence of records.
class TimeSeries {
 public:
  void push_back(const Record& r) { records_.push_back(r); }
  void reserve(std::size_t n) { records_.reserve(n); }

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const Record& operator[](std::size_t i) const { return records_[i]; }
  Record& operator[](std::size_t i) { return records_[i]; }
  const std::vector<Record>& records() const noexcept { return records_; }
  auto begin() const noexcept { return records_.begin(); }
  auto end() const noexcept { return records_.end(); }

  /// Extracts one column, e.g. `ts.column(&Record::inversion)`.
  template <class T>
  std::vector<T> column(T Record::*field) const {
    std::vector<T> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.*field);
    return out;
  }

  std::vector<double> times() const { return column(&Record::t); }
  std::vector<std::complex<double>> autocorrelation() const {
    return column(&Record::autocorrelation);
  }

  bool has_fidelity() const noexcept { return !empty() && records_.front().fidelity.has_value(); }
  bool has_h_cor() const noexcept { return !empty() && records_.front().h_cor.has_value(); }

  /// Record spacing. Throws DomainError if the times are not uniform to 1e-9 relative.
  double spacing() const;

 private:
  std::vector<Record> records_;
};

}  // namespace jcwave
