#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jcwave/errors.hpp"
#include "jcwave/models.hpp"
#include "jcwave/states.hpp"

using namespace jcwave;

namespace {

std::size_t index_of(const Grid& g, double q) {
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (std::abs(g.q()[k] - q) < 1e-12) return k;
  }
  FAIL("lattice point not found");
  return 0;
}

}  // namespace

TEST_CASE("rabi potential matrix") {
  const auto g = make_grid(16, 8.0);
  const ModelParams rabi{Model::rabi, 1.0, 1.0};
  const auto v = potential_part(rabi, *g);
  const auto i0 = index_of(*g, 0.0);
  CHECK(v.a[i0] == 0.0);
  CHECK(v.bz[i0] == doctest::Approx(0.5));
  CHECK(v.bx[i0] == 0.0);

  const auto i1 = index_of(*g, 1.0);
  CHECK(v.a[i1] == doctest::Approx(0.5));
  CHECK(v.bz[i1] == doctest::Approx(0.5));
  CHECK(v.bx[i1] == doctest::Approx(std::numbers::sqrt2));
  CHECK(v.by[i1] == 0.0);
}

TEST_CASE("jc potential and kinetic parts") {
  const auto g = make_grid(16, 8.0);
  const ModelParams jc{Model::jc, 1.0, 1.0};
  const auto v = potential_part(jc, *g);
  CHECK(v.bx[index_of(*g, 1.0)] == doctest::Approx(1.0 / std::numbers::sqrt2));

  const auto k = kinetic_part(jc, *g);
  CHECK(k.by[0] == 0.0);
  CHECK(k.bx[0] == 0.0);
  const double p = g->p()[3];
  CHECK(k.by[3] == doctest::Approx(-p / std::numbers::sqrt2));
  CHECK(k.a[3] == doctest::Approx(0.5 * p * p));

  const auto rk = kinetic_part(ModelParams{Model::rabi, 1.0, 1.0}, *g);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(rk.bx[i] == 0.0);
    CHECK(rk.by[i] == 0.0);
    CHECK(rk.bz[i] == 0.0);
  }
}

TEST_CASE("jc momentum coupling at p = 2") {
  auto g = make_grid(64, 4.0 * std::numbers::pi);  // dp = 2 pi/(2 q_max) = 0.25
  const auto k = kinetic_part(ModelParams{Model::jc, 1.0, 1.0}, *g);
  CHECK(g->p()[8] == doctest::Approx(2.0));
  CHECK(k.by[8] == doctest::Approx(-std::numbers::sqrt2));
}

TEST_CASE("displaced basis rotation") {
  const auto g = make_grid(256, 10.0);
  const auto psi = build_initial(FieldStateSpec::fock(0), AtomStateSpec::excited(), g);
  const auto r = rotate_to_displaced_basis(psi);
  CHECK(r.basis() == Basis::displaced);
  for (std::size_t k = 0; k < g->size(); k += 17) {
    CHECK(std::abs(r.up()[k] - psi.up()[k] / std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(r.down()[k] - psi.up()[k] / std::numbers::sqrt2) < 1e-15);
  }
  const auto back = rotate_to_displaced_basis(r);
  CHECK(back.basis() == Basis::bare);
  double diff = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) diff = std::max(diff, std::abs(back.up()[k] - psi.up()[k]));
  CHECK(diff < 1e-15);
  CHECK(r.norm() == doctest::Approx(psi.norm()).epsilon(1e-15));
}

TEST_CASE("diabatic curves") {
  const auto g = make_grid(1024, 16.0);
  const auto d = diabatic_curves(ModelParams{Model::rabi, 1.0, 1.0}, *g);
  const auto lo_plus = std::min_element(d.plus_shift.begin(), d.plus_shift.end()) - d.plus_shift.begin();
  const auto lo_minus = std::min_element(d.minus_shift.begin(), d.minus_shift.end()) - d.minus_shift.begin();
  CHECK(g->q()[lo_plus] == doctest::Approx(-std::numbers::sqrt2).epsilon(0.02));
  CHECK(g->q()[lo_minus] == doctest::Approx(std::numbers::sqrt2).epsilon(0.02));
  CHECK(d.plus_shift[lo_plus] == doctest::Approx(-1.0).epsilon(1e-3));

  const auto i0 = index_of(*g, 0.0);
  CHECK(d.plus_shift[i0] == doctest::Approx(d.minus_shift[i0]));

  const auto flat = diabatic_curves(ModelParams{Model::rabi, 1.0, 0.0}, *g);
  for (std::size_t k = 0; k < g->size(); k += 31) {
    CHECK(flat.plus_shift[k] == doctest::Approx(0.5 * g->q()[k] * g->q()[k]));
    CHECK(flat.minus_shift[k] == flat.plus_shift[k]);
  }
}

TEST_CASE("model parsing and validation") {
  CHECK(parse_model("rabi") == Model::rabi);
  CHECK(parse_model("jc_interaction") == Model::jc_interaction);
  CHECK_THROWS_AS(parse_model("dicke"), ConfigError);
  CHECK_THROWS_AS((ModelParams{Model::jc, 0.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((ModelParams{Model::jc, 1.0, -0.1}.validate()), ConfigError);
  CHECK_THROWS_AS((ModelParams{Model::jc, NAN, 0.1}.validate()), ConfigError);
}

TEST_CASE("hamiltonian action is hermitian") {
  const auto g = make_grid(512, 20.0);
  const ModelParams jc{Model::jc, 1.3, 0.7};
  const auto a = build_initial(FieldStateSpec::coherent({1.0, 0.5}), AtomStateSpec::excited(), g);
  const auto b = build_initial(FieldStateSpec::fock(3), AtomStateSpec::superposition({1, 0}, {0, 1}), g);
  const cplx ab = inner_product(a, apply_hamiltonian(jc, b));
  const cplx ba = inner_product(b, apply_hamiltonian(jc, a));
  CHECK(std::abs(ab - std::conj(ba)) < 1e-10);
}
