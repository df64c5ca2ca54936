#include "jcwave/classical.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jcwave/errors.hpp"

namespace jcwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRootTolerance = 1e-10;

double sign(Sheet sheet) noexcept { return sheet == Sheet::upper ? 1.0 : -1.0; }

/// Sheet energy at p = 0 as a function of q (rabi) or of the radius (jc).
double profile(double x, Sheet sheet, const ModelParams& params) {
  const double om2 = params.omega_atom * params.omega_atom;
  const double g2 = params.g0 * params.g0;
  const double coupling = params.model == Model::rabi ? 2.0 * g2 : 0.5 * g2;
  return 0.5 * x * x + sign(sheet) * std::sqrt(0.25 * om2 + coupling * x * x);
}

void require_supported(const ModelParams& params) {
  params.validate();
  if (params.model != Model::rabi && params.model != Model::jc) {
    throw ConfigError(std::string("energy manifolds are defined for rabi and jc, not ") +
                      to_string(params.model));
  }
}

/// Outer reach beyond which the profile exceeds epsilon0 on both sheets.
double reach(double epsilon0, const ModelParams& params) {
  const double g = params.g0;
  const double c = params.model == Model::rabi ? 2.0 * g * g : 0.5 * g * g;
  // x^2/2 - sqrt(Omega^2/4 + c x^2) >= x^2/2 - Omega/2 - sqrt(c) |x|.
  const double b = std::sqrt(c);
  const double rhs = std::max(0.0, epsilon0) + 0.5 * params.omega_atom;
  return b + std::sqrt(b * b + 2.0 * rhs) + 1.0;
}

/// Root of profile(x) - epsilon0 on [lo, hi] by bisection; the signs at the ends differ.
double bisect(double lo, double hi, double epsilon0, Sheet sheet, const ModelParams& params) {
  double flo = profile(lo, sheet, params) - epsilon0;
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = profile(mid, sheet, params) - epsilon0;
    if ((fmid <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Sub-intervals of [lo, hi] where profile <= epsilon0, with bisected ends.
std::vector<std::pair<double, double>> allowed_intervals(double lo, double hi, double epsilon0,
                                                         Sheet sheet, const ModelParams& params) {
  constexpr int kScan = 20000;
  std::vector<std::pair<double, double>> out;
  const double step = (hi - lo) / kScan;
  bool inside = profile(lo, sheet, params) <= epsilon0;
  double start = lo;
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo + i * step;
    const bool now = profile(x, sheet, params) <= epsilon0;
    if (now != inside) {
      const double root = bisect(x - step, x, epsilon0, sheet, params);
      if (now) {
        start = root;
      } else {
        out.emplace_back(start, root);
      }
      inside = now;
    }
  }
  if (inside) out.emplace_back(start, hi);
  return out;
}

double momentum_at(double q, double epsilon0, Sheet sheet, const ModelParams& params) {
  return std::sqrt(std::max(0.0, 2.0 * (epsilon0 - profile(q, sheet, params))));
}

}  // namespace

double semiclassical_energy(double q, double p, Sheet sheet, const ModelParams& params) {
  require_supported(params);
  if (params.model == Model::rabi) return 0.5 * p * p + profile(q, sheet, params);
  return profile(std::hypot(q, p), sheet, params);
}

double sheet_minimum(Sheet sheet, const ModelParams& params) {
  require_supported(params);
  // The profile is even, with its minimum at 0 or where x^2 = c - Omega^2/(4c) on the lower sheet.
  double best = profile(0.0, sheet, params);
  if (sheet == Sheet::lower) {
    const double g2 = params.g0 * params.g0;
    const double c = params.model == Model::rabi ? 2.0 * g2 : 0.5 * g2;
    const double x2 = c - params.omega_atom * params.omega_atom / (4.0 * c);
    if (c > 0.0 && x2 > 0.0) best = std::min(best, profile(std::sqrt(x2), sheet, params));
  }
  return best;
}

EnergyManifold manifold_contour(double epsilon0, Sheet sheet, const ModelParams& params,
                                std::size_t n_samples) {
  require_supported(params);
  if (n_samples < 4) throw ConfigError("manifold contour needs at least 4 samples per branch");
  if (epsilon0 <= sheet_minimum(sheet, params)) {
    throw DomainError("energy lies below the sheet minimum; the contour is empty");
  }
  EnergyManifold m;
  m.epsilon0 = epsilon0;
  m.sheet = sheet;
  const double r = reach(epsilon0, params);

  if (params.model == Model::rabi) {
    for (const auto& [a, b] : allowed_intervals(-r, r, epsilon0, sheet, params)) {
      std::vector<PhasePoint> loop;
      loop.reserve(2 * n_samples);
      // Cosine spacing clusters samples near the turning points.
      for (std::size_t i = 0; i < n_samples; ++i) {
        const double s = kPi * static_cast<double>(i) / static_cast<double>(n_samples);
        const double q = a + 0.5 * (b - a) * (1.0 - std::cos(s));
        loop.push_back({q, momentum_at(q, epsilon0, sheet, params)});
      }
      for (std::size_t i = 0; i < n_samples; ++i) {
        const double s = kPi * static_cast<double>(i) / static_cast<double>(n_samples);
        const double q = b - 0.5 * (b - a) * (1.0 - std::cos(s));
        loop.push_back({q, -momentum_at(q, epsilon0, sheet, params)});
      }
      m.loops.push_back(std::move(loop));
    }
    return m;
  }

  // JC: the energy depends on the radius only; each boundary radius is a circle.
  for (const auto& [a, b] : allowed_intervals(0.0, r, epsilon0, sheet, params)) {
    for (const double radius : {a, b}) {
      if (radius <= kRootTolerance) continue;
      std::vector<PhasePoint> loop;
      loop.reserve(2 * n_samples);
      for (std::size_t i = 0; i < 2 * n_samples; ++i) {
        const double phase = kPi * static_cast<double>(i) / static_cast<double>(n_samples);
        loop.push_back({radius * std::cos(phase), radius * std::sin(phase)});
      }
      m.loops.push_back(std::move(loop));
    }
  }
  return m;
}

}  // namespace jcwave
