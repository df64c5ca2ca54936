#include "jcwave/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jcwave/analytic.hpp"
#include "jcwave/errors.hpp"

namespace jcwave {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

inline cplx mul(cplx a, cplx b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

Basis full_basis(Model model) noexcept { return model == Model::lz ? Basis::displaced : Basis::bare; }

}  // namespace

const char* to_string(Scheme scheme) noexcept { return scheme == Scheme::vkv ? "vkv" : "kvk"; }

Scheme parse_scheme(std::string_view name) {
  if (name == "vkv") return Scheme::vkv;
  if (name == "kvk") return Scheme::kvk;
  throw ConfigError("unknown splitting scheme '" + std::string(name) + "'");
}

void PropagatorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (record_stride < 1) throw ConfigError("record_stride must be at least 1");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be non-negative");
  const double steps = t_final / dt;
  if (std::abs(steps - std::round(steps)) > 1e-6 * std::max(1.0, steps)) {
    throw ConfigError("t_final must be an integer multiple of dt");
  }
}

std::size_t PropagatorConfig::total_steps() const {
  validate();
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

SplitOperatorPropagator::SplitOperatorPropagator(GridPtr grid, const PotentialMatrix& position_part,
                                                 const PotentialMatrix& momentum_part, double dt,
                                                 Scheme scheme, Basis basis)
    : grid_(std::move(grid)), dt_(dt), scheme_(scheme), basis_(basis), plan_(grid_->size(), 2) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  const std::size_t n = grid_->size();
  if (position_part.size() != n || momentum_part.size() != n) {
    throw DimensionError("Hamiltonian parts do not match the grid size");
  }
  // The inverse transform is unnormalized; fold 1/n into the momentum factors.
  const double inv_n = 1.0 / static_cast<double>(n);
  if (scheme == Scheme::vkv) {
    outer_half_ = exponentiate(position_part, 0.5 * dt, 1.0);
    outer_full_ = exponentiate(position_part, dt, 1.0);
    inner_full_ = exponentiate(momentum_part, dt, inv_n);
  } else {
    outer_half_ = exponentiate(momentum_part, 0.5 * dt, inv_n);
    outer_full_ = exponentiate(momentum_part, dt, inv_n);
    inner_full_ = exponentiate(position_part, dt, 1.0);
  }
}

SplitOperatorPropagator SplitOperatorPropagator::full(const ModelParams& params, const GridPtr& grid,
                                                      double dt, Scheme scheme) {
  return {grid, potential_part(params, *grid), kinetic_part(params, *grid), dt, scheme,
          full_basis(params.model)};
}

SplitOperatorPropagator SplitOperatorPropagator::adiabatic(const ModelParams& params,
                                                           const GridPtr& grid, double dt,
                                                           Scheme scheme) {
  if (params.model != Model::rabi) throw ConfigError("adiabatic propagation is defined for the rabi model");
  const AdiabaticCurves curves = adiabatic_curves(params, *grid);
  PotentialMatrix v(grid->size());
  for (std::size_t k = 0; k < grid->size(); ++k) {
    v.a[k] = 0.5 * (curves.v_plus[k] + curves.v_minus[k]);
    v.bz[k] = 0.5 * (curves.v_plus[k] - curves.v_minus[k]);
  }
  PotentialMatrix t(grid->size());
  const auto p = grid->p();
  for (std::size_t k = 0; k < grid->size(); ++k) t.a[k] = 0.5 * p[k] * p[k];
  return {grid, v, t, dt, scheme, Basis::adiabatic};
}

SplitOperatorPropagator::Factor SplitOperatorPropagator::exponentiate(const PotentialMatrix& m,
                                                                      double tau, double scale) {
  const std::size_t n = m.size();
  Factor f;
  for (auto& u : f.u) u.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double bx = m.bx[k];
    const double by = m.by[k];
    const double bz = m.bz[k];
    const double b = std::sqrt(bx * bx + by * by + bz * bz);
    const double c = std::cos(b * tau);
    // sin(b tau)/b, finite as b -> 0.
    const double s = b > 0.0 ? std::sin(b * tau) / b : tau;
    const cplx phase = std::polar(scale, -m.a[k] * tau);
    f.u[0][k] = phase * cplx{c, -s * bz};
    f.u[1][k] = phase * cplx{-s * by, -s * bx};
    f.u[2][k] = phase * cplx{s * by, -s * bx};
    f.u[3][k] = phase * cplx{c, s * bz};
  }
  return f;
}

void SplitOperatorPropagator::apply(const Factor& f, std::span<cplx> buf, std::size_t n) noexcept {
  cplx* up = buf.data();
  cplx* down = buf.data() + n;
  const cplx* u0 = f.u[0].data();
  const cplx* u1 = f.u[1].data();
  const cplx* u2 = f.u[2].data();
  const cplx* u3 = f.u[3].data();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = up[k];
    const cplx b = down[k];
    up[k] = mul(u0[k], a) + mul(u1[k], b);
    down[k] = mul(u2[k], a) + mul(u3[k], b);
  }
}

void SplitOperatorPropagator::advance(WavePacket& psi, std::size_t n_steps) {
  if (!psi.grid().same_lattice(*grid_)) throw DimensionError("wave packet lives on a different grid");
  if (psi.basis() != basis_) {
    throw BasisError(std::string("propagator expects a ") + to_string(basis_) + " packet, got " +
                     to_string(psi.basis()));
  }
  if (n_steps == 0) return;
  const std::size_t n = grid_->size();
  auto buf = plan_.buffer();
  std::copy(psi.data().begin(), psi.data().end(), buf.begin());

  // Adjacent half steps of the outer factor fuse into one full step.
  if (scheme_ == Scheme::vkv) {
    apply(outer_half_, buf, n);
    for (std::size_t i = 0; i < n_steps; ++i) {
      plan_.forward();
      apply(inner_full_, buf, n);
      plan_.backward();
      apply(i + 1 < n_steps ? outer_full_ : outer_half_, buf, n);
    }
  } else {
    plan_.forward();
    apply(outer_half_, buf, n);
    for (std::size_t i = 0; i < n_steps; ++i) {
      plan_.backward();
      apply(inner_full_, buf, n);
      plan_.forward();
      apply(i + 1 < n_steps ? outer_full_ : outer_half_, buf, n);
    }
    plan_.backward();
  }

  std::copy(buf.begin(), buf.end(), psi.data().begin());
  if (!psi.is_finite()) throw NumericalBlowup("non-finite amplitude during propagation");
}

WavePacket step_full(const WavePacket& psi, const ModelParams& params, double dt, Scheme scheme) {
  auto stepper = SplitOperatorPropagator::full(params, psi.grid_ptr(), dt, scheme);
  WavePacket out = psi;
  stepper.advance(out, 1);
  return out;
}

WavePacket step_adiabatic(const WavePacket& psi, const ModelParams& params, double dt, Scheme scheme) {
  auto stepper = SplitOperatorPropagator::adiabatic(params, psi.grid_ptr(), dt, scheme);
  WavePacket out = psi;
  stepper.advance(out, 1);
  return out;
}

void propagate(SplitOperatorPropagator& stepper, WavePacket& psi, const PropagatorConfig& config,
               const RecordCallback& on_record) {
  const std::size_t total = config.total_steps();
  if (std::abs(config.dt - stepper.dt()) > 1e-15 * config.dt) {
    throw ConfigError("propagator and configuration disagree on dt");
  }
  auto record = [&](std::size_t step) {
    if (psi.boundary_ratio() > config.boundary_tolerance) {
      throw NumericalBlowup("wave packet reached the grid boundary at t = " +
                            std::to_string(static_cast<double>(step) * config.dt));
    }
    if (on_record) on_record(step, static_cast<double>(step) * config.dt, psi);
  };
  record(0);
  std::size_t step = 0;
  while (step < total) {
    const std::size_t chunk = std::min(config.record_stride, total - step);
    stepper.advance(psi, chunk);
    step += chunk;
    record(step);
  }
}

double adiabatic_angle(double q, const ModelParams& params) noexcept {
  return 0.5 * std::atan2(2.0 * kSqrt2 * params.g0 * q, params.omega_atom);
}

WavePacket to_adiabatic_basis(const WavePacket& psi, const ModelParams& params) {
  if (psi.basis() != Basis::bare) throw BasisError("to_adiabatic_basis needs a bare packet");
  WavePacket out = psi;
  out.set_basis(Basis::adiabatic);
  const auto q = psi.grid().q();
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double phi = adiabatic_angle(q[k], params);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const cplx u = psi.up()[k];
    const cplx d = psi.down()[k];
    out.up()[k] = c * u + s * d;
    out.down()[k] = -s * u + c * d;
  }
  return out;
}

WavePacket from_adiabatic_basis(const WavePacket& psi, const ModelParams& params) {
  if (psi.basis() != Basis::adiabatic) throw BasisError("from_adiabatic_basis needs an adiabatic packet");
  WavePacket out = psi;
  out.set_basis(Basis::bare);
  const auto q = psi.grid().q();
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double phi = adiabatic_angle(q[k], params);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const cplx a = psi.up()[k];
    const cplx b = psi.down()[k];
    out.up()[k] = c * a - s * b;
    out.down()[k] = s * a + c * b;
  }
  return out;
}

namespace {

double classical_force(double q, Sheet sheet, const ModelParams& params, ClassicalForce law) {
  const double om2 = params.omega_atom * params.omega_atom;
  const double g2 = params.g0 * params.g0;
  const double den = om2 + 2.0 * g2 * q * q;
  const double restoring = -q + 16.0 * om2 * g2 * g2 * q / (den * den * den);
  const double x = law == ClassicalForce::published ? std::abs(q) : q;
  const double coupling = 4.0 * g2 * x / std::sqrt(om2 + 8.0 * g2 * q * q);
  return sheet == Sheet::upper ? restoring - coupling : restoring + coupling;
}

}  // namespace

double classical_energy(const ClassicalState& s, const ModelParams& params) noexcept {
  return 0.5 * s.p * s.p + adiabatic_potential(s.q, s.sheet == Sheet::upper ? +1 : -1, params);
}

std::vector<ClassicalState> classical_trajectory(const ClassicalState& init, const ModelParams& params,
                                                 double dt, double t_final, ClassicalForce force) {
  params.validate();
  if (!(dt > 0.0) || !(t_final >= 0.0)) throw ConfigError("classical trajectory needs dt > 0, t_final >= 0");
  if (!std::isfinite(init.q) || !std::isfinite(init.p)) throw NumericalBlowup("non-finite initial state");
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  std::vector<ClassicalState> out;
  out.reserve(steps + 1);
  ClassicalState s = init;
  out.push_back(s);
  auto f = [&](double q) { return classical_force(q, s.sheet, params, force); };
  for (std::size_t i = 0; i < steps; ++i) {
    const double k1q = s.p;
    const double k1p = f(s.q);
    const double k2q = s.p + 0.5 * dt * k1p;
    const double k2p = f(s.q + 0.5 * dt * k1q);
    const double k3q = s.p + 0.5 * dt * k2p;
    const double k3p = f(s.q + 0.5 * dt * k2q);
    const double k4q = s.p + dt * k3p;
    const double k4p = f(s.q + dt * k3q);
    s.q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    s.p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    s.t = init.t + static_cast<double>(i + 1) * dt;
    if (!std::isfinite(s.q) || !std::isfinite(s.p)) throw NumericalBlowup("classical trajectory diverged");
    out.push_back(s);
  }
  return out;
}

namespace {

/// Upper-eigenvector angle of [[s q, w], [w, -s q]] with s = sqrt(2) g0, w = Omega/2:
/// the eigenvector is (cos a, sin a) with tan 2a = w / (s q).
double lz_angle(double q, double g0, double omega) noexcept {
  return 0.5 * std::atan2(0.5 * omega, kSqrt2 * g0 * q);
}

struct Moments {
  double weight = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

Moments moments(const std::vector<double>& density, std::span<const double> q, double dq) {
  Moments m;
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    m.weight += density[k];
    s1 += density[k] * q[k];
    s2 += density[k] * q[k] * q[k];
  }
  if (m.weight > 0.0) {
    m.mean = s1 / m.weight;
    m.stddev = std::sqrt(std::max(0.0, s2 / m.weight - m.mean * m.mean));
  }
  m.weight *= dq;
  return m;
}

}  // namespace

LzScatteringResult lz_scattering(const LzScatteringConfig& cfg) {
  ModelParams params{Model::lz, cfg.omega, cfg.g0};
  params.validate();
  if (!(cfg.q0 < 0.0)) throw ConfigError("Landau-Zener launch point must satisfy q0 < 0");
  if (!(cfg.width > 0.0)) throw ConfigError("Landau-Zener packet width must be positive");
  LzScatteringResult res;
  res.p_lz = lz_probability(cfg.v, params);

  // Downhill diabatic channel is |-> with V = -sqrt(2) g0 q.
  const double drop = kSqrt2 * cfg.g0 * std::abs(cfg.q0);
  const double p0sq = cfg.v * cfg.v - 2.0 * drop;
  if (!(p0sq > 0.0)) throw ConfigError("Landau-Zener packet cannot reach the crossing with this v");
  res.launch_momentum = std::sqrt(p0sq);

  const GridPtr grid = make_grid(cfg.n_points, cfg.q_max);
  const auto q = grid->q();
  WavePacket psi(grid, Basis::displaced);
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double x = q[k] - cfg.q0;
    const cplx env = std::polar(std::exp(-x * x / (4.0 * cfg.width * cfg.width)),
                                res.launch_momentum * x);
    const double a = lz_angle(q[k], cfg.g0, cfg.omega);
    psi.up()[k] = std::cos(a) * env;
    psi.down()[k] = std::sin(a) * env;
  }
  psi.normalize();

  auto stepper = SplitOperatorPropagator::full(params, grid, cfg.dt);
  const std::size_t check_every = std::max<std::size_t>(1, static_cast<std::size_t>(0.1 / cfg.dt));
  std::vector<double> upper(q.size());
  std::vector<double> lower(q.size());
  double t = 0.0;
  while (true) {
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double a = lz_angle(q[k], cfg.g0, cfg.omega);
      const cplx u = psi.up()[k];
      const cplx d = psi.down()[k];
      upper[k] = std::norm(std::cos(a) * u + std::sin(a) * d);
      lower[k] = std::norm(-std::sin(a) * u + std::cos(a) * d);
    }
    const Moments mu = moments(upper, q, grid->dq());
    const Moments ml = moments(lower, q, grid->dq());
    const bool up_past = mu.weight < 1e-12 || mu.mean - 5.0 * mu.stddev > 0.0;
    const bool low_past = ml.weight < 1e-12 || ml.mean - 5.0 * ml.stddev > 0.0;
    if (up_past && low_past) {
      res.transfer = mu.weight / (mu.weight + ml.weight);
      res.norm = mu.weight + ml.weight;
      res.t_end = t;
      return res;
    }
    if (t > cfg.t_max) throw NumericalBlowup("Landau-Zener packet did not clear the crossing before t_max");
    if (psi.boundary_ratio() > 1e-8) throw NumericalBlowup("Landau-Zener packet reached the grid boundary");
    stepper.advance(psi, check_every);
    t += static_cast<double>(check_every) * cfg.dt;
  }
}

}  // namespace jcwave
