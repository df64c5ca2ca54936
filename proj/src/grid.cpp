#include "jcwave/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jcwave/errors.hpp"
#include "jcwave/fft.hpp"

namespace jcwave {

Grid::Grid(std::size_t n_points, double q_min, double q_max)
    : q_min_(q_min),
      q_max_(q_max),
      dq_((q_max - q_min) / static_cast<double>(n_points)),
      dp_(2.0 * std::numbers::pi / (static_cast<double>(n_points) * dq_)),
      q_(n_points),
      p_(n_points) {
  const auto n = static_cast<std::ptrdiff_t>(n_points);
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    q_[k] = q_min_ + static_cast<double>(k) * dq_;
    const std::ptrdiff_t m = k < n / 2 ? k : k - n;
    p_[k] = static_cast<double>(m) * dp_;
  }
}

double Grid::p_nyquist() const noexcept { return std::numbers::pi / dq_; }

bool Grid::same_lattice(const Grid& other) const noexcept {
  return size() == other.size() && q_min_ == other.q_min_ && dq_ == other.dq_;
}

GridPtr make_grid(std::size_t n_points, double q_max) {
  if (n_points < 16 || !std::has_single_bit(n_points)) {
    std::ostringstream os;
    os << "grid size must be a power of two >= 16, got " << n_points;
    throw ConfigError(os.str());
  }
  if (!(q_max > 0.0) || !std::isfinite(q_max)) {
    throw ConfigError("grid half-width q_max must be positive and finite");
  }
  return std::make_shared<const Grid>(n_points, -q_max, q_max);
}

const char* to_string(Basis basis) noexcept {
  switch (basis) {
    case Basis::bare: return "bare";
    case Basis::displaced: return "displaced";
    case Basis::adiabatic: return "adiabatic";
  }
  return "?";
}

TwoChannelField::TwoChannelField(GridPtr grid, Basis basis)
    : grid_(std::move(grid)), basis_(basis), n_(grid_->size()), data_(2 * n_) {}

TwoChannelField::TwoChannelField(GridPtr grid, std::vector<cplx> up, std::vector<cplx> down,
                                 Basis basis)
    : TwoChannelField(std::move(grid), basis) {
  if (up.size() != n_ || down.size() != n_) {
    throw DimensionError("channel amplitude length does not match the grid");
  }
  std::copy(up.begin(), up.end(), data_.begin());
  std::copy(down.begin(), down.end(), data_.begin() + static_cast<std::ptrdiff_t>(n_));
}

bool TwoChannelField::is_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double TwoChannelField::sum_squared() const noexcept {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

double TwoChannelField::channel_sum_squared(bool upper) const noexcept {
  double s = 0.0;
  for (const auto& z : upper ? up() : down()) s += std::norm(z);
  return s;
}

double WavePacket::norm() const noexcept { return sum_squared() * grid().dq(); }
double WavePacket::up_norm() const noexcept { return channel_sum_squared(true) * grid().dq(); }
double WavePacket::down_norm() const noexcept { return channel_sum_squared(false) * grid().dq(); }

void WavePacket::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw NumericalBlowup("cannot normalize a zero or non-finite wave packet");
  }
  const double scale = 1.0 / std::sqrt(nrm);
  for (auto& z : data()) z *= scale;
}

double WavePacket::boundary_ratio() const noexcept {
  const std::size_t n = size();
  const std::size_t edge = std::max<std::size_t>(1, n / 50);
  double peak = 0.0;
  double edge_max = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::max(std::abs(up()[k]), std::abs(down()[k]));
    peak = std::max(peak, a);
    if (k < edge || k >= n - edge) edge_max = std::max(edge_max, a);
  }
  return peak > 0.0 ? edge_max / peak : 0.0;
}

double MomentumPacket::norm() const noexcept { return sum_squared() * grid().dp(); }

void require_compatible(const TwoChannelField& a, const TwoChannelField& b) {
  if (!a.grid().same_lattice(b.grid())) throw DimensionError("wave packets live on different grids");
  if (a.basis() != b.basis()) {
    throw BasisError(std::string("basis mismatch: ") + to_string(a.basis()) + " vs " +
                     to_string(b.basis()));
  }
}

cplx inner_product(const WavePacket& a, const WavePacket& b) {
  require_compatible(a, b);
  cplx s{0.0, 0.0};
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
  return s * a.grid().dq();
}

MomentumPacket to_momentum(const WavePacket& psi) {
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  FftPlan plan(n, 2);
  auto buf = plan.buffer();
  std::copy(psi.data().begin(), psi.data().end(), buf.begin());
  plan.forward();
  MomentumPacket out(psi.grid_ptr(), psi.basis());
  const double scale = g.dq() / std::sqrt(2.0 * std::numbers::pi);
  const auto p = g.p();
  auto dst = out.data();
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t k = 0; k < n; ++k) {
      dst[c * n + k] = buf[c * n + k] * std::polar(scale, -p[k] * g.q_min());
    }
  }
  return out;
}

WavePacket to_position(const MomentumPacket& phi) {
  const Grid& g = phi.grid();
  const std::size_t n = g.size();
  FftPlan plan(n, 2);
  auto buf = plan.buffer();
  const auto p = g.p();
  const auto src = phi.data();
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t k = 0; k < n; ++k) {
      buf[c * n + k] = src[c * n + k] * std::polar(1.0, p[k] * g.q_min());
    }
  }
  plan.backward();
  WavePacket out(phi.grid_ptr(), phi.basis());
  const double scale = g.dp() / std::sqrt(2.0 * std::numbers::pi);
  auto dst = out.data();
  for (std::size_t i = 0; i < 2 * n; ++i) dst[i] = buf[i] * scale;
  return out;
}

}  // namespace jcwave
