#pragma once

#include <cstddef>
#include <vector>

#include "jcwave/models.hpp"
#include "jcwave/propagator.hpp"

namespace jcwave {

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/// Level set eps(q, p) = epsilon0 of one semiclassical energy sheet, as closed loops.
struct EnergyManifold {
  double epsilon0 = 0.0;
  Sheet sheet = Sheet::upper;
  std::vector<std::vector<PhasePoint>> loops;
};

/// Semiclassical sheet energies with the field treated as a classical phase-space point:
///   rabi  p^2/2 + q^2/2 +- sqrt(Omega^2/4 + 2 g0^2 q^2)
///   jc    (q^2 + p^2)/2 +- sqrt(Omega^2/4 + g0^2 (q^2 + p^2)/2)
double semiclassical_energy(double q, double p, Sheet sheet, const ModelParams& params);

/// Lowest value of the sheet energy.
double sheet_minimum(Sheet sheet, const ModelParams& params);

/// Contour of the sheet energy at epsilon0. Rabi contours sweep q between turning
/// points (located by bisection to 1e-10) and take both signs of p, so a lower sheet
/// below its barrier yields two loops. JC contours are found radially and are circles.
/// Each loop holds 2 * n_samples points. Throws DomainError if epsilon0 lies below the
/// sheet minimum, ConfigError for other models.
EnergyManifold manifold_contour(double epsilon0, Sheet sheet, const ModelParams& params,
                                std::size_t n_samples = 200);

}  // namespace jcwave
