#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace jcwave {

using cplx = std::complex<double>;

/// Uniform periodic position lattice q_k = q_min + k*dq, k = 0..n-1, and the
/// momentum lattice of the discrete Fourier transform in native FFT order
/// (0, dp, ..., (n/2-1)dp, -n/2 dp, ..., -dp).
class Grid {
 public:
  Grid(std::size_t n_points, double q_min, double q_max);

  std::size_t size() const noexcept { return q_.size(); }
  double q_min() const noexcept { return q_min_; }
  double q_max() const noexcept { return q_max_; }
  double dq() const noexcept { return dq_; }
  double dp() const noexcept { return dp_; }
  /// Largest |p| on the lattice, pi/dq.
  double p_nyquist() const noexcept;

  std::span<const double> q() const noexcept { return q_; }
  std::span<const double> p() const noexcept { return p_; }

  bool same_lattice(const Grid& other) const noexcept;

 private:
  double q_min_;
  double q_max_;
  double dq_;
  double dp_;
  std::vector<double> q_;
  std::vector<double> p_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Symmetric grid [-q_max, q_max) with a power-of-two point count >= 16.
GridPtr make_grid(std::size_t n_points, double q_max);

/// Channel basis of a two-component packet. `displaced` is the bare basis
/// rotated by U = (sigma_x + sigma_z)/sqrt(2), where the Rabi potentials are
/// two displaced oscillators.
enum class Basis { bare, displaced, adiabatic };

const char* to_string(Basis basis) noexcept;

/// Shared storage for two channel amplitudes laid out contiguously
/// ([up..., down...]) so both channels can be transformed in one batch.
class TwoChannelField {
 public:
  TwoChannelField(GridPtr grid, Basis basis);
  TwoChannelField(GridPtr grid, std::vector<cplx> up, std::vector<cplx> down, Basis basis);

  std::span<cplx> up() noexcept { return {data_.data(), n_}; }
  std::span<const cplx> up() const noexcept { return {data_.data(), n_}; }
  std::span<cplx> down() noexcept { return {data_.data() + n_, n_}; }
  std::span<const cplx> down() const noexcept { return {data_.data() + n_, n_}; }
  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  Basis basis() const noexcept { return basis_; }
  void set_basis(Basis basis) noexcept { basis_ = basis; }
  std::size_t size() const noexcept { return n_; }

  bool is_finite() const noexcept;

 protected:
  /// Sum of |up|^2 + |down|^2 without the lattice weight.
  double sum_squared() const noexcept;
  double channel_sum_squared(bool upper) const noexcept;

 private:
  GridPtr grid_;
  Basis basis_;
  std::size_t n_;
  std::vector<cplx> data_;
};

/// Two-component wave packet Psi(q) = up(q)|+> + down(q)|-> on a position grid.
class WavePacket : public TwoChannelField {
 public:
  using TwoChannelField::TwoChannelField;

  /// dq * sum(|up|^2 + |down|^2).
  double norm() const noexcept;
  double up_norm() const noexcept;
  double down_norm() const noexcept;
  /// Rescale to unit norm. Throws NumericalBlowup for a zero or non-finite state.
  void normalize();
  /// Largest amplitude within the outer 2% of the grid relative to the peak.
  double boundary_ratio() const noexcept;
};

/// Momentum-space amplitudes phi(p) on the dual lattice, scaled so that
/// dp * sum |phi|^2 equals the position-space norm.
class MomentumPacket : public TwoChannelField {
 public:
  using TwoChannelField::TwoChannelField;
  double norm() const noexcept;
};

/// dq * sum(conj(a) b) over both channels.
cplx inner_product(const WavePacket& a, const WavePacket& b);

/// Continuous-normalized Fourier transform phi(p) = (2 pi)^(-1/2) int psi(q) e^{-ipq} dq.
MomentumPacket to_momentum(const WavePacket& psi);
WavePacket to_position(const MomentumPacket& phi);

/// Raises DimensionError / BasisError when a and b are incompatible.
void require_compatible(const TwoChannelField& a, const TwoChannelField& b);

}  // namespace jcwave
