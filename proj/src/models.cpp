#include "jcwave/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jcwave/errors.hpp"

namespace jcwave {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void apply_pointwise(const PotentialMatrix& m, std::span<cplx> up, std::span<cplx> down) {
  const cplx i{0.0, 1.0};
  for (std::size_t k = 0; k < m.size(); ++k) {
    const cplx u = up[k];
    const cplx d = down[k];
    up[k] = (m.a[k] + m.bz[k]) * u + (m.bx[k] - i * m.by[k]) * d;
    down[k] = (m.bx[k] + i * m.by[k]) * u + (m.a[k] - m.bz[k]) * d;
  }
}

}  // namespace

const char* to_string(Model model) noexcept {
  switch (model) {
    case Model::rabi: return "rabi";
    case Model::jc: return "jc";
    case Model::jc_interaction: return "jc_interaction";
    case Model::lz: return "lz";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  if (name == "rabi") return Model::rabi;
  if (name == "jc") return Model::jc;
  if (name == "jc_interaction" || name == "jc_ip") return Model::jc_interaction;
  if (name == "lz") return Model::lz;
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

void ModelParams::validate() const {
  if (!(omega_atom > 0.0) || !std::isfinite(omega_atom)) {
    throw ConfigError("omega_atom must be positive and finite");
  }
  if (!(g0 >= 0.0) || !std::isfinite(g0)) throw ConfigError("g0 must be non-negative and finite");
}

PotentialMatrix potential_part(const ModelParams& params, const Grid& grid) {
  params.validate();
  const auto q = grid.q();
  PotentialMatrix m(q.size());
  const double half_omega = 0.5 * params.omega_atom;
  for (std::size_t k = 0; k < q.size(); ++k) {
    switch (params.model) {
      case Model::rabi:
        m.a[k] = 0.5 * q[k] * q[k];
        m.bz[k] = half_omega;
        m.bx[k] = kSqrt2 * params.g0 * q[k];
        break;
      case Model::jc:
        m.a[k] = 0.5 * q[k] * q[k];
        m.bz[k] = half_omega;
        m.bx[k] = params.g0 * q[k] / kSqrt2;
        break;
      case Model::jc_interaction:
        m.bz[k] = 0.5 * params.detuning();
        m.bx[k] = params.g0 * q[k] / kSqrt2;
        break;
      case Model::lz:
        m.bz[k] = kSqrt2 * params.g0 * q[k];
        m.bx[k] = half_omega;
        break;
    }
  }
  return m;
}

PotentialMatrix kinetic_part(const ModelParams& params, const Grid& grid) {
  params.validate();
  const auto p = grid.p();
  PotentialMatrix m(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    switch (params.model) {
      case Model::rabi:
      case Model::lz:
        m.a[k] = 0.5 * p[k] * p[k];
        break;
      case Model::jc:
        m.a[k] = 0.5 * p[k] * p[k];
        // Upper off-diagonal bx - i*by = g0 (q + ip)/sqrt(2).
        m.by[k] = -params.g0 * p[k] / kSqrt2;
        break;
      case Model::jc_interaction:
        m.by[k] = -params.g0 * p[k] / kSqrt2;
        break;
    }
  }
  return m;
}

WavePacket apply_hamiltonian(const ModelParams& params, const WavePacket& psi) {
  const Grid& grid = psi.grid();
  WavePacket v_psi = psi;
  apply_pointwise(potential_part(params, grid), v_psi.up(), v_psi.down());

  MomentumPacket phi = to_momentum(psi);
  apply_pointwise(kinetic_part(params, grid), phi.up(), phi.down());
  WavePacket t_psi = to_position(phi);

  auto out = v_psi.data();
  const auto add = t_psi.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += add[i];
  return v_psi;
}

WavePacket rotate_to_displaced_basis(const WavePacket& psi) {
  Basis target = Basis::bare;
  switch (psi.basis()) {
    case Basis::bare: target = Basis::displaced; break;
    case Basis::displaced: target = Basis::bare; break;
    case Basis::adiabatic:
      throw BasisError("rotate_to_displaced_basis needs a bare or displaced packet");
  }
  WavePacket out = psi;
  out.set_basis(target);
  const double s = 1.0 / kSqrt2;
  auto up = out.up();
  auto down = out.down();
  for (std::size_t k = 0; k < up.size(); ++k) {
    const cplx u = psi.up()[k];
    const cplx d = psi.down()[k];
    up[k] = s * (u + d);
    down[k] = s * (u - d);
  }
  return out;
}

DiabaticCurves diabatic_curves(const ModelParams& params, const Grid& grid) {
  params.validate();
  double shift = 0.0;
  double offset = 0.0;
  switch (params.model) {
    case Model::rabi:
      shift = kSqrt2 * params.g0;
      offset = params.g0 * params.g0;
      break;
    case Model::jc:
      shift = params.g0 / kSqrt2;
      offset = 0.25 * params.g0 * params.g0;
      break;
    default:
      throw ConfigError(std::string("diabatic curves are defined for rabi and jc, not ") +
                        to_string(params.model));
  }
  const auto q = grid.q();
  DiabaticCurves c{std::vector<double>(q.size()), std::vector<double>(q.size())};
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double xp = q[k] + shift;
    const double xm = q[k] - shift;
    c.plus_shift[k] = 0.5 * xp * xp - offset;
    c.minus_shift[k] = 0.5 * xm * xm - offset;
  }
  return c;
}

}  // namespace jcwave
