#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jcwave/grid.hpp"
#include "jcwave/models.hpp"
#include "jcwave/states.hpp"
#include "jcwave/timeseries.hpp"

namespace jcwave {

/// Dressed block n of the JC Hamiltonian, spanned by |n-1,+> and |n,->:
///   H_n = n + [[D/2, g0 sqrt(n)], [g0 sqrt(n), -D/2]],   D = Omega - 1.
/// The lone state |0,-> has energy 1/2 - Omega/2.
struct JCEigenData {
  unsigned n = 1;
  /// tan(2 theta) = 2 g0 sqrt(n) / D, theta in [0, pi/2].
  double theta = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
};

JCEigenData jc_block(unsigned n, const ModelParams& params);
double jc_ground_energy(const ModelParams& params) noexcept;

/// Amplitudes c_{n,+}, c_{n,-} of a state in the number basis, n = 0..size()-1.
struct NumberState {
  std::vector<cplx> plus;
  std::vector<cplx> minus;

  std::size_t size() const noexcept { return plus.size(); }
};

/// Default truncation ceil(|nu|^2 + 10|nu| + 20) for coherent states, n + 2 for Fock states.
std::size_t default_truncation(const FieldStateSpec& field);

/// Number-basis amplitudes of field (x) atom, truncated to n_max + 1 levels.
/// Throws TruncationError if the discarded weight exceeds 1e-12.
NumberState number_state(const FieldStateSpec& field, const AtomStateSpec& atom, std::size_t n_max);

/// exp(-i H_JC t) applied blockwise to `initial`.
NumberState jc_evolve(const NumberState& initial, const ModelParams& params, double t);

/// Observables of a number-basis state, with the autocorrelation <reference|state>.
Record number_basis_record(const NumberState& state, const NumberState& reference,
                           const ModelParams& params, double t);

/// Exact JC dynamics sampled at `times`. `n_max` overrides the default truncation.
TimeSeries jc_exact_evolution(const FieldStateSpec& field, const AtomStateSpec& atom,
                              const ModelParams& params, std::span<const double> times,
                              std::optional<std::size_t> n_max = std::nullopt);

/// Uniform sampling helper: t_k = k * step for k = 0..floor(t_final/step + 1e-9).
std::vector<double> uniform_times(double t_final, double step);

struct RevivalEstimate {
  /// pi Omega / g0^2.
  double t_r_adiabatic = 0.0;
  /// 2 pi sqrt(nbar)/g0 * (1 + D^2/(4 g0^2 nbar))^(1/2).
  double t_r_standard = 0.0;
  /// 2 pi / |w+ - w-| from quadratic fits to V+ and V- around their minima.
  double t_r_numeric_curvature = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double q_min_plus = 0.0;
  double q_min_minus = 0.0;
  /// False when 2 g0^2 / Omega >= 1, where the small-coupling expansion breaks down.
  bool adiabatic_valid = true;
  /// True when V- has two symmetric minima away from q = 0.
  bool double_well = false;
};

/// Requires g0 > 0 (DomainError otherwise). `fit_half_width` is the fit interval
/// |q - q_min| <= fit_half_width around each minimum.
RevivalEstimate revival_estimates(const ModelParams& params, const FieldStateSpec& field,
                                  double fit_half_width = 10.0);

/// 1 - exp(-pi Omega^2 / (4 sqrt(2) g0 v)). Throws DomainError unless v > 0 and g0 > 0.
double lz_probability(double v, const ModelParams& params);

/// Adiabatic potential curves of the Rabi model and the rotation-angle derivatives.
struct AdiabaticCurves {
  std::vector<double> v_plus;
  std::vector<double> v_minus;
  std::vector<double> dtheta;
  std::vector<double> d2theta;
};

/// V+-(q) = q^2/2 + 2 Omega^2 g0^2/(Omega^2 + 2 g0^2 q^2)^2 +- sqrt(Omega^2/4 + 2 g0^2 q^2).
double adiabatic_potential(double q, int sheet, const ModelParams& params) noexcept;
/// d theta/dq = sqrt(2) Omega g0 / (Omega^2 + 8 g0^2 q^2).
double adiabatic_dtheta(double q, const ModelParams& params) noexcept;
double adiabatic_d2theta(double q, const ModelParams& params) noexcept;

AdiabaticCurves adiabatic_curves(const ModelParams& params, const Grid& grid);
AdiabaticCurves adiabatic_curves(const ModelParams& params, std::span<const double> q);

}  // namespace jcwave
