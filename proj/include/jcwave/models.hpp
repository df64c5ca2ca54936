#pragma once

#include <string_view>
#include <vector>

#include "jcwave/grid.hpp"

namespace jcwave {

/// Hamiltonians on the quadrature (q, p) representation, scaled units hbar = omega = 1.
///
///   rabi            p^2/2 + q^2/2 + (Omega/2) sz + sqrt(2) g0 q sx
///   jc              p^2/2 + q^2/2 + (Omega/2) sz + g0 (q sx - p sy)/sqrt(2)
///   jc_interaction  jc - N, with N = p^2/2 + q^2/2 + sz/2
///   lz              p^2/2 + sqrt(2) g0 q sz + (Omega/2) sx   (linearized crossing,
///                   written in the displaced basis, no harmonic confinement)
enum class Model { rabi, jc, jc_interaction, lz };

const char* to_string(Model model) noexcept;
/// Accepts "rabi", "jc", "jc_interaction" (or "jc_ip"), "lz". Throws ConfigError.
Model parse_model(std::string_view name);

struct ModelParams {
  Model model = Model::jc;
  /// Atomic transition frequency in units of the field frequency.
  double omega_atom = 1.0;
  /// Atom-field coupling in units of the field frequency.
  double g0 = 0.0;

  double detuning() const noexcept { return omega_atom - 1.0; }
  /// Throws ConfigError unless omega_atom > 0 and g0 >= 0, both finite.
  void validate() const;
};

/// Pointwise Hermitian 2x2 matrix a*I + bx*sx + by*sy + bz*sz on a lattice.
struct PotentialMatrix {
  std::vector<double> a;
  std::vector<double> bx;
  std::vector<double> by;
  std::vector<double> bz;

  explicit PotentialMatrix(std::size_t n = 0) : a(n), bx(n), by(n), bz(n) {}
  std::size_t size() const noexcept { return a.size(); }
};

/// q-dependent part of the Hamiltonian, evaluated on grid.q().
PotentialMatrix potential_part(const ModelParams& params, const Grid& grid);
/// p-dependent part of the Hamiltonian, evaluated on grid.p() (FFT order).
PotentialMatrix kinetic_part(const ModelParams& params, const Grid& grid);

/// H psi, the kinetic part applied in momentum space.
WavePacket apply_hamiltonian(const ModelParams& params, const WavePacket& psi);

/// Applies U = (sx + sz)/sqrt(2). Maps bare <-> displaced; U is an involution.
WavePacket rotate_to_displaced_basis(const WavePacket& psi);

/// Diagonal curves of the displaced-basis Hamiltonian:
///   rabi  V_h(q + sqrt(2) g0) - g0^2  and  V_h(q - sqrt(2) g0) - g0^2
///   jc    V_h(q + g0/sqrt(2)) - g0^2/4 and V_h(q - g0/sqrt(2)) - g0^2/4
/// with V_h(x) = x^2/2.
struct DiabaticCurves {
  std::vector<double> plus_shift;
  std::vector<double> minus_shift;
};

DiabaticCurves diabatic_curves(const ModelParams& params, const Grid& grid);

}  // namespace jcwave
