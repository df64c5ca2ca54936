#include "jcwave/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "jcwave/errors.hpp"
#include "jcwave/observables.hpp"

namespace jcwave {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;
constexpr double kTailTolerance = 1e-12;

void require_jc(const ModelParams& params) {
  params.validate();
  if (params.model != Model::jc && params.model != Model::jc_interaction) {
    throw ConfigError(std::string("exact number-basis evolution needs the jc model, got ") +
                      to_string(params.model));
  }
}

/// |<n|nu>|^2 and phase-carrying amplitude, computed in log space.
cplx coherent_coefficient(cplx nu, std::size_t n) {
  const double r = std::abs(nu);
  if (r == 0.0) return n == 0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
  const double dn = static_cast<double>(n);
  const double log_mag = -0.5 * r * r + dn * std::log(r) - 0.5 * std::lgamma(dn + 1.0);
  return std::polar(std::exp(log_mag), dn * std::arg(nu));
}

std::size_t coherent_required_truncation(cplx nu) {
  const double nbar = std::norm(nu);
  std::size_t n = static_cast<std::size_t>(nbar);
  double tail = 1.0;
  double below = 0.0;
  for (std::size_t k = 0; k <= n; ++k) below += std::norm(coherent_coefficient(nu, k));
  tail = 1.0 - below;
  while (tail > kTailTolerance) {
    ++n;
    const double w = std::norm(coherent_coefficient(nu, n));
    tail -= w;
    if (w < 1e-300 && n > nbar) break;
  }
  return n;
}

double fit_frequency(int sheet, double q0, double half_width, const ModelParams& params) {
  constexpr int kSamples = 2001;
  double s0 = 0.0, s2 = 0.0, s4 = 0.0, sy = 0.0, sx2y = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = half_width * (2.0 * i / (kSamples - 1) - 1.0);
    const double y = adiabatic_potential(q0 + x, sheet, params);
    const double x2 = x * x;
    s0 += 1.0;
    s2 += x2;
    s4 += x2 * x2;
    sy += y;
    sx2y += x2 * y;
  }
  // Odd moments vanish on a symmetric window, so the quadratic coefficient
  // decouples from the linear one.
  const double c2 = (s0 * sx2y - s2 * sy) / (s0 * s4 - s2 * s2);
  if (!(c2 > 0.0)) throw DomainError("adiabatic curve is not convex over the fit interval");
  return std::sqrt(2.0 * c2);
}

double locate_minimum(int sheet, const ModelParams& params) {
  const double reach = 4.0 * kSqrt2 * params.g0 + 10.0;
  constexpr int kScan = 4001;
  double best_q = 0.0;
  double best_v = adiabatic_potential(0.0, sheet, params);
  const double step = reach / (kScan - 1);
  for (int i = 1; i < kScan; ++i) {
    const double q = i * step;
    const double v = adiabatic_potential(q, sheet, params);
    if (v < best_v) {
      best_v = v;
      best_q = q;
    }
  }
  const double lo = std::max(0.0, best_q - step);
  const double hi = best_q + step;
  auto f = [&](double q) { return adiabatic_potential(q, sheet, params); };
  const auto [q_star, v_star] = boost::math::tools::brent_find_minima(f, lo, hi, 52);
  return v_star <= f(0.0) ? q_star : 0.0;
}

}  // namespace

JCEigenData jc_block(unsigned n, const ModelParams& params) {
  if (n == 0) throw DomainError("JC dressed blocks start at n = 1");
  params.validate();
  const double d = params.detuning();
  const double coupling = params.g0 * std::sqrt(static_cast<double>(n));
  const double lambda = std::sqrt(0.25 * d * d + coupling * coupling);
  JCEigenData e;
  e.n = n;
  e.theta = 0.5 * std::atan2(2.0 * coupling, d);
  e.e_plus = n + lambda;
  e.e_minus = n - lambda;
  return e;
}

double jc_ground_energy(const ModelParams& params) noexcept { return 0.5 - 0.5 * params.omega_atom; }

std::size_t default_truncation(const FieldStateSpec& field) {
  if (field.kind == FieldKind::fock) return field.n + 2;
  const double r = std::abs(field.nu);
  return static_cast<std::size_t>(std::ceil(r * r + 10.0 * r + 20.0));
}

NumberState number_state(const FieldStateSpec& field, const AtomStateSpec& atom, std::size_t n_max) {
  atom.validate();
  NumberState s;
  // One spare level so the top |n_max,+> has a partner |n_max+1,-> in its block.
  s.plus.assign(n_max + 2, cplx{});
  s.minus.assign(n_max + 2, cplx{});
  if (field.kind == FieldKind::fock) {
    if (field.n > n_max) {
      throw TruncationError("Fock level exceeds the number-basis truncation", field.n);
    }
    s.plus[field.n] = atom.plus;
    s.minus[field.n] = atom.minus;
    return s;
  }
  double kept = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const cplx c = coherent_coefficient(field.nu, n);
    kept += std::norm(c);
    s.plus[n] = atom.plus * c;
    s.minus[n] = atom.minus * c;
  }
  if (1.0 - kept > kTailTolerance) {
    const std::size_t required = coherent_required_truncation(field.nu);
    std::ostringstream os;
    os << "Fock truncation n_max=" << n_max << " leaves tail weight " << 1.0 - kept
       << "; need n_max >= " << required;
    throw TruncationError(os.str(), required);
  }
  return s;
}

NumberState jc_evolve(const NumberState& initial, const ModelParams& params, double t) {
  require_jc(params);
  const std::size_t size = initial.size();
  NumberState out{std::vector<cplx>(size), std::vector<cplx>(size)};
  const double d = params.detuning();
  const cplx i{0.0, 1.0};
  out.minus[0] = initial.minus[0] * std::polar(1.0, -jc_ground_energy(params) * t);
  for (std::size_t m = 1; m < size; ++m) {
    const double coupling = params.g0 * std::sqrt(static_cast<double>(m));
    const double lambda = std::sqrt(0.25 * d * d + coupling * coupling);
    const double cs = std::cos(lambda * t);
    const double sn = lambda > 0.0 ? std::sin(lambda * t) / lambda : t;
    const cplx phase = std::polar(1.0, -static_cast<double>(m) * t);
    const cplx u = initial.plus[m - 1];
    const cplx w = initial.minus[m];
    out.plus[m - 1] = phase * (cs * u - i * sn * (0.5 * d * u + coupling * w));
    out.minus[m] = phase * (cs * w - i * sn * (coupling * u - 0.5 * d * w));
  }
  // The top |size-1,+> has no partner inside the truncation; it carries no weight.
  out.plus[size - 1] = initial.plus[size - 1] *
                       std::polar(1.0, -(static_cast<double>(size) - 0.5 + 0.5 * params.omega_atom) * t);
  return out;
}

Record number_basis_record(const NumberState& s, const NumberState& reference,
                           const ModelParams& params, double t) {
  const std::size_t size = s.size();
  double pp = 0.0, mm = 0.0, n_mean = 0.0;
  cplx a{}, a2{}, pm{}, a_sigma_plus{}, overlap{};
  for (std::size_t n = 0; n < size; ++n) {
    const double wp = std::norm(s.plus[n]);
    const double wm = std::norm(s.minus[n]);
    pp += wp;
    mm += wm;
    n_mean += static_cast<double>(n) * (wp + wm);
    pm += s.plus[n] * std::conj(s.minus[n]);
    overlap += std::conj(reference.plus[n]) * s.plus[n] + std::conj(reference.minus[n]) * s.minus[n];
    if (n >= 1) {
      const double r = std::sqrt(static_cast<double>(n));
      a += r * (std::conj(s.plus[n - 1]) * s.plus[n] + std::conj(s.minus[n - 1]) * s.minus[n]);
      a_sigma_plus += r * std::conj(s.plus[n - 1]) * s.minus[n];
    }
    if (n >= 2) {
      const double r = std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1));
      a2 += r * (std::conj(s.plus[n - 2]) * s.plus[n] + std::conj(s.minus[n - 2]) * s.minus[n]);
    }
  }
  const double norm = pp + mm;
  Record r;
  r.t = t;
  r.norm = norm;
  r.inversion = (pp - mm) / norm;
  const double n_bar = n_mean / norm;
  r.mean_q = kSqrt2 * a.real() / norm;
  r.mean_p = kSqrt2 * a.imag() / norm;
  const double q2 = a2.real() / norm + n_bar + 0.5;
  const double p2 = -a2.real() / norm + n_bar + 0.5;
  r.var_q = q2 - r.mean_q * r.mean_q;
  r.var_p = p2 - r.mean_p * r.mean_p;
  r.excitation = n_bar + 0.5 + 0.5 * r.inversion;
  r.energy = n_bar + 0.5 + 0.5 * params.omega_atom * r.inversion +
             2.0 * params.g0 * a_sigma_plus.real() / norm;
  r.entropy = two_level_entropy(pp / norm, mm / norm, pm / norm);
  r.autocorrelation = overlap;
  return r;
}

std::vector<double> uniform_times(double t_final, double step) {
  if (!(step > 0.0) || !(t_final >= 0.0)) throw DomainError("uniform_times needs step > 0, t_final >= 0");
  const auto count = static_cast<std::size_t>(std::floor(t_final / step + 1e-9)) + 1;
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = static_cast<double>(k) * step;
  return t;
}

TimeSeries jc_exact_evolution(const FieldStateSpec& field, const AtomStateSpec& atom,
                              const ModelParams& params, std::span<const double> times,
                              std::optional<std::size_t> n_max) {
  require_jc(params);
  const NumberState initial = number_state(field, atom, n_max.value_or(default_truncation(field)));
  TimeSeries ts;
  ts.reserve(times.size());
  for (const double t : times) {
    ts.push_back(number_basis_record(jc_evolve(initial, params, t), initial, params, t));
  }
  return ts;
}

RevivalEstimate revival_estimates(const ModelParams& params, const FieldStateSpec& field,
                                  double fit_half_width) {
  params.validate();
  if (!(params.g0 > 0.0)) throw DomainError("revival estimates need g0 > 0");
  if (!(fit_half_width > 0.0)) throw DomainError("fit half-width must be positive");
  const double g2 = params.g0 * params.g0;
  const double d = params.detuning();
  RevivalEstimate r;
  r.t_r_adiabatic = kPi * params.omega_atom / g2;
  r.adiabatic_valid = 2.0 * g2 / params.omega_atom < 1.0;
  const double nbar = field.mean_photon_number();
  r.t_r_standard = nbar > 0.0 ? 2.0 * kPi * std::sqrt(nbar) / params.g0 *
                                    std::sqrt(1.0 + d * d / (4.0 * g2 * nbar))
                              : std::numeric_limits<double>::infinity();
  r.q_min_plus = locate_minimum(+1, params);
  r.q_min_minus = locate_minimum(-1, params);
  r.double_well = r.q_min_minus > 1e-6;
  r.omega_plus = fit_frequency(+1, r.q_min_plus, fit_half_width, params);
  r.omega_minus = fit_frequency(-1, r.q_min_minus, fit_half_width, params);
  r.t_r_numeric_curvature = 2.0 * kPi / std::abs(r.omega_plus - r.omega_minus);
  return r;
}

double lz_probability(double v, const ModelParams& params) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("Landau-Zener velocity must be positive");
  if (!(params.g0 > 0.0)) throw DomainError("Landau-Zener probability needs g0 > 0");
  const double om = params.omega_atom;
  return -std::expm1(-kPi * om * om / (4.0 * kSqrt2 * params.g0 * v));
}

double adiabatic_potential(double q, int sheet, const ModelParams& params) noexcept {
  const double om2 = params.omega_atom * params.omega_atom;
  const double g2 = params.g0 * params.g0;
  const double den = om2 + 2.0 * g2 * q * q;
  const double correction = 2.0 * om2 * g2 / (den * den);
  const double lambda = std::sqrt(0.25 * om2 + 2.0 * g2 * q * q);
  return 0.5 * q * q + correction + (sheet >= 0 ? lambda : -lambda);
}

double adiabatic_dtheta(double q, const ModelParams& params) noexcept {
  const double om = params.omega_atom;
  const double g = params.g0;
  return kSqrt2 * om * g / (om * om + 8.0 * g * g * q * q);
}

double adiabatic_d2theta(double q, const ModelParams& params) noexcept {
  const double om = params.omega_atom;
  const double g = params.g0;
  const double den = om * om + 8.0 * g * g * q * q;
  return -16.0 * kSqrt2 * om * g * g * g * q / (den * den);
}

AdiabaticCurves adiabatic_curves(const ModelParams& params, std::span<const double> q) {
  params.validate();
  AdiabaticCurves c{std::vector<double>(q.size()), std::vector<double>(q.size()),
                    std::vector<double>(q.size()), std::vector<double>(q.size())};
  for (std::size_t k = 0; k < q.size(); ++k) {
    c.v_plus[k] = adiabatic_potential(q[k], +1, params);
    c.v_minus[k] = adiabatic_potential(q[k], -1, params);
    c.dtheta[k] = adiabatic_dtheta(q[k], params);
    c.d2theta[k] = adiabatic_d2theta(q[k], params);
  }
  return c;
}

AdiabaticCurves adiabatic_curves(const ModelParams& params, const Grid& grid) {
  return adiabatic_curves(params, grid.q());
}

}  // namespace jcwave
