#include "jcwave/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jcwave/errors.hpp"

namespace jcwave {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double pi_quarter_inv() { return 1.0 / std::sqrt(std::sqrt(std::numbers::pi)); }

}  // namespace

double FieldStateSpec::mean_photon_number() const noexcept {
  return kind == FieldKind::fock ? static_cast<double>(n) : std::norm(nu);
}

AtomStateSpec AtomStateSpec::superposition(cplx plus, cplx minus) {
  const double nrm = std::sqrt(std::norm(plus) + std::norm(minus));
  if (!(nrm > 0.0)) throw ConfigError("atomic state amplitudes are both zero");
  return {plus / nrm, minus / nrm};
}

void AtomStateSpec::validate() const {
  if (std::abs(std::norm(plus) + std::norm(minus) - 1.0) > 1e-12) {
    throw ConfigError("atomic amplitudes must satisfy |c+|^2 + |c-|^2 = 1");
  }
}

unsigned max_resolved_fock(const Grid& grid) noexcept {
  const double p_lim = 0.9 * grid.p_nyquist();
  const double q_lim = grid.q_max() - 5.0;
  const double r = std::min(p_lim, q_lim);
  if (r <= 1.0) return 0;
  return static_cast<unsigned>(std::floor((r * r - 1.0) / 2.0));
}

std::vector<double> fock_wavefunction(unsigned n, const Grid& grid) {
  if (n > max_resolved_fock(grid)) {
    std::ostringstream os;
    os << "Fock state n=" << n << " exceeds the grid resolution limit n_max="
       << max_resolved_fock(grid);
    throw ResolutionError(os.str());
  }
  const auto q = grid.q();
  std::vector<double> prev(q.size());
  std::vector<double> cur(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) prev[k] = pi_quarter_inv() * std::exp(-0.5 * q[k] * q[k]);
  if (n == 0) return prev;
  for (std::size_t k = 0; k < q.size(); ++k) cur[k] = kSqrt2 * q[k] * prev[k];
  for (unsigned m = 1; m < n; ++m) {
    const double a = std::sqrt(2.0 / (m + 1.0));
    const double b = std::sqrt(static_cast<double>(m) / (m + 1.0));
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double next = a * q[k] * cur[k] - b * prev[k];
      prev[k] = cur[k];
      cur[k] = next;
    }
  }
  return cur;
}

std::vector<cplx> coherent_wavefunction(cplx nu, const Grid& grid) {
  const double reach = kSqrt2 * std::abs(nu) + 5.0;
  if (reach >= grid.q_max() || reach >= 0.9 * grid.p_nyquist()) {
    throw ResolutionError("coherent amplitude too large for the grid");
  }
  const auto q = grid.q();
  std::vector<cplx> out(q.size());
  // exp(-(Im nu)^2 - (q - sqrt2 nu)^2/2) with the (Im nu)^2 terms cancelled analytically.
  const double center = kSqrt2 * nu.real();
  const double kick = kSqrt2 * nu.imag();
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double x = q[k] - center;
    out[k] = std::polar(pi_quarter_inv() * std::exp(-0.5 * x * x), kick * x);
  }
  return out;
}

std::vector<cplx> field_wavefunction(const FieldStateSpec& field, const Grid& grid) {
  if (field.kind == FieldKind::coherent) return coherent_wavefunction(field.nu, grid);
  const auto re = fock_wavefunction(field.n, grid);
  return {re.begin(), re.end()};
}

WavePacket build_initial(const FieldStateSpec& field, const AtomStateSpec& atom, const GridPtr& grid) {
  atom.validate();
  const auto phi = field_wavefunction(field, *grid);
  std::vector<cplx> up(phi.size());
  std::vector<cplx> down(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    up[k] = atom.plus * phi[k];
    down[k] = atom.minus * phi[k];
  }
  WavePacket psi(grid, std::move(up), std::move(down), Basis::bare);
  psi.normalize();
  return psi;
}

}  // namespace jcwave
