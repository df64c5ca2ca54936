#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jcwave/classical.hpp"
#include "jcwave/errors.hpp"

using namespace jcwave;

TEST_CASE("uncoupled manifolds are circles") {
  const ModelParams p{Model::rabi, 1.0, 0.0};
  for (const Sheet s : {Sheet::upper, Sheet::lower}) {
    const double eps = 3.0;
    const double expected = std::sqrt(2.0 * (eps - (s == Sheet::upper ? 0.5 : -0.5)));
    const auto m = manifold_contour(eps, s, p);
    REQUIRE(m.loops.size() == 1);
    for (const auto& pt : m.loops[0]) CHECK(std::hypot(pt.q, pt.p) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("lower Rabi sheet below the barrier has two loops") {
  const ModelParams p{Model::rabi, 1.0, 1.0};
  const double floor = sheet_minimum(Sheet::lower, p);
  CHECK(floor < semiclassical_energy(0.0, 0.0, Sheet::lower, p));
  const auto m = manifold_contour(floor + 0.2, Sheet::lower, p);
  REQUIRE(m.loops.size() == 2);
  double c0 = 0.0;
  double c1 = 0.0;
  for (const auto& pt : m.loops[0]) c0 += pt.q / m.loops[0].size();
  for (const auto& pt : m.loops[1]) c1 += pt.q / m.loops[1].size();
  CHECK(c0 < 0.0);
  CHECK(c1 > 0.0);
  for (const auto& loop : m.loops) {
    for (const auto& pt : loop) CHECK(semiclassical_energy(pt.q, pt.p, Sheet::lower, p) == doctest::Approx(floor + 0.2).epsilon(1e-8));
  }
  CHECK(manifold_contour(floor + 5.0, Sheet::lower, p).loops.size() == 1);
}

TEST_CASE("JC manifolds are exact circles") {
  const ModelParams p{Model::jc, 1.0, 1.0};
  const auto m = manifold_contour(10.0, Sheet::upper, p);
  REQUIRE_FALSE(m.loops.empty());
  for (const auto& loop : m.loops) {
    const double r = std::hypot(loop[0].q, loop[0].p);
    double worst = 0.0;
    for (const auto& pt : loop) worst = std::max(worst, std::abs(std::hypot(pt.q, pt.p) - r));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("contour errors") {
  const ModelParams p{Model::rabi, 1.0, 1.0};
  CHECK_THROWS_AS(manifold_contour(sheet_minimum(Sheet::upper, p) - 0.1, Sheet::upper, p), DomainError);
  CHECK_THROWS_AS(manifold_contour(5.0, Sheet::upper, ModelParams{Model::lz, 1.0, 1.0}), ConfigError);
}
