#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "jcwave/fft.hpp"
#include "jcwave/grid.hpp"
#include "jcwave/models.hpp"

namespace jcwave {

/// Order of the Strang factors: V(dt/2) K(dt) V(dt/2) or K(dt/2) V(dt) K(dt/2).
enum class Scheme { vkv, kvk };

const char* to_string(Scheme scheme) noexcept;
Scheme parse_scheme(std::string_view name);

struct PropagatorConfig {
  double dt = 1e-3;
  double t_final = 0.0;
  std::size_t record_stride = 1;
  Scheme scheme = Scheme::vkv;
  /// Largest tolerated edge amplitude relative to the peak, checked at each record.
  double boundary_tolerance = 1e-8;

  /// Throws ConfigError unless dt > 0, record_stride >= 1 and t_final/dt is an integer.
  void validate() const;
  std::size_t total_steps() const;
};

/// Strang split-operator stepper for H = A(q) + B(p), with A and B pointwise
/// Hermitian 2x2 matrices. Each factor is the exact 2x2 exponential. The stepper
/// owns its FFT workspace, so one instance must not be shared between threads.
class SplitOperatorPropagator {
 public:
  SplitOperatorPropagator(GridPtr grid, const PotentialMatrix& position_part,
                          const PotentialMatrix& momentum_part, double dt, Scheme scheme,
                          Basis basis);

  /// Full coupled model (bare basis; displaced basis for the lz model).
  static SplitOperatorPropagator full(const ModelParams& params, const GridPtr& grid, double dt,
                                      Scheme scheme = Scheme::vkv);
  /// Rabi model on the decoupled adiabatic curves, H_cor dropped.
  static SplitOperatorPropagator adiabatic(const ModelParams& params, const GridPtr& grid,
                                           double dt, Scheme scheme = Scheme::vkv);

  /// Advances psi in place by n_steps steps. Throws NumericalBlowup on NaN/Inf.
  void advance(WavePacket& psi, std::size_t n_steps);

  double dt() const noexcept { return dt_; }
  Scheme scheme() const noexcept { return scheme_; }
  Basis basis() const noexcept { return basis_; }
  const Grid& grid() const noexcept { return *grid_; }

 private:
  /// exp(-i tau M) on every lattice point, row-major 2x2.
  struct Factor {
    std::array<std::vector<cplx>, 4> u;
  };
  static Factor exponentiate(const PotentialMatrix& m, double tau, double scale);
  static void apply(const Factor& f, std::span<cplx> buf, std::size_t n) noexcept;

  GridPtr grid_;
  double dt_;
  Scheme scheme_;
  Basis basis_;
  Factor outer_half_;
  Factor outer_full_;
  Factor inner_full_;
  FftPlan plan_;
};

/// Single steps on copies; convenient for tests and small jobs.
WavePacket step_full(const WavePacket& psi, const ModelParams& params, double dt,
                     Scheme scheme = Scheme::vkv);
WavePacket step_adiabatic(const WavePacket& psi, const ModelParams& params, double dt,
                          Scheme scheme = Scheme::vkv);

/// Runs config.total_steps() steps, calling on_record(step, t, psi) at step 0 and
/// every record_stride steps (and at the final step). Checks the boundary amplitude
/// at each record and throws NumericalBlowup when it exceeds the tolerance.
using RecordCallback = std::function<void(std::size_t step, double t, const WavePacket& psi)>;
void propagate(SplitOperatorPropagator& stepper, WavePacket& psi, const PropagatorConfig& config,
               const RecordCallback& on_record);

/// Local adiabatic angle of the Rabi potential, phi = atan2(2 sqrt(2) g0 q, Omega)/2.
double adiabatic_angle(double q, const ModelParams& params) noexcept;

/// Pointwise rotation into the eigenbasis of the Rabi potential matrix:
///   up_ad = cos(phi) up + sin(phi) down,  down_ad = -sin(phi) up + cos(phi) down.
WavePacket to_adiabatic_basis(const WavePacket& psi, const ModelParams& params);
WavePacket from_adiabatic_basis(const WavePacket& psi, const ModelParams& params);

enum class Sheet { upper, lower };

/// Force law for classical trajectories on the adiabatic sheets. `published` uses
/// |q_c| in the coupling term, which makes the force kink at q_c = 0; `gradient`
/// uses the exact -dV/dq.
enum class ClassicalForce { published, gradient };

struct ClassicalState {
  double t = 0.0;
  double q = 0.0;
  double p = 0.0;
  Sheet sheet = Sheet::upper;
};

/// Fixed-step RK4 on the chosen sheet. Returns one state per step, including the start.
std::vector<ClassicalState> classical_trajectory(const ClassicalState& init, const ModelParams& params,
                                                 double dt, double t_final,
                                                 ClassicalForce force = ClassicalForce::published);

/// p^2/2 + V(q) on the state's sheet.
double classical_energy(const ClassicalState& s, const ModelParams& params) noexcept;

/// Landau-Zener scattering on the lz model. A Gaussian packet in the local upper
/// adiabatic state starts at q0 < 0, moving towards the crossing with a launch momentum
/// that gives mean velocity v at q = 0. The run stops once both adiabatic components
/// sit five standard deviations past the crossing.
struct LzScatteringConfig {
  double omega = 1.0;
  double g0 = 0.1;
  double v = 4.0;
  double q0 = -20.0;
  double width = 2.0;
  std::size_t n_points = 2048;
  double q_max = 64.0;
  double dt = 2e-3;
  double t_max = 100.0;
};

struct LzScatteringResult {
  double transfer = 0.0;
  double p_lz = 0.0;
  double t_end = 0.0;
  double norm = 0.0;
  double launch_momentum = 0.0;
};

LzScatteringResult lz_scattering(const LzScatteringConfig& config);

}  // namespace jcwave
