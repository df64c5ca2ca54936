#include "jcwave/timeseries.hpp"

#include <algorithm>
#include <cmath>

#include "jcwave/errors.hpp"

namespace jcwave {

double uniform_spacing(std::span<const double> times) {
  if (times.size() < 2) throw DomainError("time series needs at least two samples");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(dt > 0.0)) throw DomainError("sample times are not increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(times[i]))) {
      throw DomainError("sample times are not uniformly spaced");
    }
  }
  return dt;
}

double TimeSeries::spacing() const {
  const auto t = times();
  return uniform_spacing(t);
}

}  // namespace jcwave
