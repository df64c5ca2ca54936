#pragma once

#include <vector>

#include "jcwave/grid.hpp"

namespace jcwave {

enum class FieldKind { fock, coherent };

/// Initial field state: a Fock state |n> or a coherent state |nu>.
struct FieldStateSpec {
  FieldKind kind = FieldKind::fock;
  unsigned n = 0;
  cplx nu{0.0, 0.0};

  static FieldStateSpec fock(unsigned n) { return {FieldKind::fock, n, {}}; }
  static FieldStateSpec coherent(cplx nu) { return {FieldKind::coherent, 0, nu}; }

  double mean_photon_number() const noexcept;
};

/// Atomic amplitudes c+|+> + c-|->, |c+|^2 + |c-|^2 = 1.
struct AtomStateSpec {
  cplx plus{1.0, 0.0};
  cplx minus{0.0, 0.0};

  static AtomStateSpec excited() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static AtomStateSpec ground() { return {{0.0, 0.0}, {1.0, 0.0}}; }
  /// Normalizes (plus, minus); throws ConfigError if both vanish.
  static AtomStateSpec superposition(cplx plus, cplx minus);

  /// Throws ConfigError unless normalized within 1e-12.
  void validate() const;
};

/// Largest Fock index the grid resolves: sqrt(2n+1) stays below 0.9 pi/dq in
/// momentum and 5 units inside the box in position.
unsigned max_resolved_fock(const Grid& grid) noexcept;

/// Hermite function psi_n(q) = (2^n n!)^(-1/2) pi^(-1/4) H_n(q) exp(-q^2/2),
/// built with the normalized three-term recurrence.
std::vector<double> fock_wavefunction(unsigned n, const Grid& grid);

/// pi^(-1/4) exp(-(Im nu)^2) exp(-(q - sqrt(2) nu)^2 / 2) for complex nu;
/// <q> = sqrt(2) Re nu, <p> = sqrt(2) Im nu.
std::vector<cplx> coherent_wavefunction(cplx nu, const Grid& grid);

/// Field state times atomic state, bare basis, unit norm on the grid.
WavePacket build_initial(const FieldStateSpec& field, const AtomStateSpec& atom, const GridPtr& grid);

/// Field wavefunction of `field` on the grid (real Fock values promoted to complex).
std::vector<cplx> field_wavefunction(const FieldStateSpec& field, const Grid& grid);

}  // namespace jcwave
