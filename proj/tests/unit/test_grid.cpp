#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jcwave/errors.hpp"
#include "jcwave/fft.hpp"
#include "jcwave/grid.hpp"
#include "jcwave/states.hpp"

using namespace jcwave;

TEST_CASE("grid spacing") {
  const auto g = make_grid(16, 8.0);
  CHECK(g->dq() == doctest::Approx(1.0));
  CHECK(g->dp() == doctest::Approx(2.0 * std::numbers::pi / 16.0));
  CHECK(g->q().front() == doctest::Approx(-8.0));
  CHECK(g->q().back() == doctest::Approx(7.0));
  CHECK(make_grid(2048, 40.0)->dq() == doctest::Approx(0.0390625));
}

TEST_CASE("momenta are in FFT order") {
  const auto g = make_grid(16, 8.0);
  const auto p = g->p();
  CHECK(p[0] == 0.0);
  CHECK(p[7] == doctest::Approx(7 * g->dp()));
  CHECK(p[8] == doctest::Approx(-8 * g->dp()));
  CHECK(p[15] == doctest::Approx(-g->dp()));
}

TEST_CASE("bad grids are rejected") {
  CHECK_THROWS_AS(make_grid(100, 10.0), ConfigError);
  CHECK_THROWS_AS(make_grid(64, 0.0), ConfigError);
  CHECK_THROWS_AS(make_grid(64, -1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 4.0), ConfigError);
}

TEST_CASE("inner products of basis states") {
  const auto g = make_grid(1024, 20.0);
  const auto f0p = build_initial(FieldStateSpec::fock(0), AtomStateSpec::excited(), g);
  const auto f1p = build_initial(FieldStateSpec::fock(1), AtomStateSpec::excited(), g);
  const auto f0m = build_initial(FieldStateSpec::fock(0), AtomStateSpec::ground(), g);
  CHECK(inner_product(f0p, f0p).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(inner_product(f0p, f1p)) < 1e-10);
  CHECK(inner_product(f0p, f0m) == cplx{0.0, 0.0});
}

TEST_CASE("incompatible packets") {
  const auto a = build_initial(FieldStateSpec::fock(0), AtomStateSpec::excited(), make_grid(256, 10.0));
  const auto b = build_initial(FieldStateSpec::fock(0), AtomStateSpec::excited(), make_grid(512, 10.0));
  CHECK_THROWS_AS(inner_product(a, b), DimensionError);
  WavePacket c = a;
  c.set_basis(Basis::adiabatic);
  CHECK_THROWS_AS(inner_product(a, c), BasisError);
}

TEST_CASE("Fourier transform of a Gaussian") {
  const auto g = make_grid(512, 20.0);
  const auto psi = build_initial(FieldStateSpec::fock(0), AtomStateSpec::excited(), g);
  const auto phi = to_momentum(psi);
  CHECK(phi.norm() == doctest::Approx(psi.norm()).epsilon(1e-12));
  const auto p = g->p();
  double worst = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double expected = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * p[k] * p[k]);
    worst = std::max(worst, std::abs(std::abs(phi.up()[k]) - expected));
  }
  CHECK(worst < 1e-12);

  const auto back = to_position(phi);
  double diff = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) diff = std::max(diff, std::abs(back.up()[k] - psi.up()[k]));
  CHECK(diff < 1e-13);
}

TEST_CASE("shift theorem") {
  const auto g = make_grid(512, 20.0);
  const double q0 = 3.0;
  std::vector<cplx> up(g->size()), down(g->size());
  for (std::size_t k = 0; k < g->size(); ++k) {
    const double x = g->q()[k] - q0;
    up[k] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  }
  const WavePacket psi(g, up, down, Basis::bare);
  const auto phi = to_momentum(psi);
  // phi(p) = |phi(p)| exp(-i p q0): the phase is linear in p with slope -q0.
  const auto p = g->p();
  for (std::size_t k = 1; k < 6; ++k) {
    const cplx ratio = phi.up()[k] / phi.up()[k - 1];
    CHECK(std::arg(ratio) == doctest::Approx(std::remainder(-q0 * (p[k] - p[k - 1]), 2 * std::numbers::pi)));
  }
}

TEST_CASE("FFT plan round trip") {
  FftPlan plan(32, 2);
  auto buf = plan.buffer();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = {std::sin(0.3 * i), std::cos(0.7 * i)};
  const std::vector<cplx> original(buf.begin(), buf.end());
  plan.forward();
  plan.backward();
  for (std::size_t i = 0; i < buf.size(); ++i) CHECK(std::abs(buf[i] / 32.0 - original[i]) < 1e-14);

  FftPlan moved = std::move(plan);
  CHECK(moved.length() == 32);
}

TEST_CASE("normalize rejects a zero state") {
  const auto g = make_grid(64, 8.0);
  WavePacket zero(g, Basis::bare);
  CHECK_THROWS_AS(zero.normalize(), NumericalBlowup);
}
