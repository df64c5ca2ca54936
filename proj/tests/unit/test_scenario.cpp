#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jcwave/errors.hpp"
#include "jcwave/scenario.hpp"

using namespace jcwave;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"(
[scenario]
name = small
runs = rabi, jc

[model]
omega = 1.5
g0 = 0.4

[field]
kind = coherent
nu_re = 1.5

[grid]
n_points = 256
q_max = 16

[propagator]
dt = 0.01
t_final = 1
record_stride = 10

[observables]
fidelity = true
spectrum = true
qfunc_times = 0, 0.5
qfunc_points = 21
snapshot_times = 1
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("jcwave_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  const Scenario sc = parse_scenario(kSmall);
  CHECK(sc.name == "small");
  CHECK(sc.runs == std::vector{RunKind::rabi, RunKind::jc});
  CHECK(sc.params.omega_atom == 1.5);
  CHECK(sc.field.kind == FieldKind::coherent);
  CHECK(sc.field.nu == cplx{1.5, 0.0});
  CHECK(sc.n_points == 256);
  CHECK(sc.propagator.total_steps() == 100);
  CHECK(sc.qfunc_times == std::vector{0.0, 0.5});
  CHECK(sc.fidelity);
}

TEST_CASE("ranges expand inclusively") {
  const Scenario sc = parse_scenario("[model]\ng0 = 0.1\n[sweep]\ng0 = 0.05:1.0:0.05\nomega = 2\n[scenario]\nruns = rabi\n");
  REQUIRE(sc.sweep_g0.size() == 20);
  CHECK(sc.sweep_g0.back() == doctest::Approx(1.0));
  CHECK(sc.sweep_omega == std::vector{2.0});
}

TEST_CASE("malformed configs") {
  CHECK_THROWS_AS(parse_scenario("[model]\nomega 1\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("[model]\nomegaa = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("[model]\nomega = one\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("[nonsense]\nx = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("[scenario]\nruns = dicke\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("[observables]\nfidelity = maybe\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("[model]\nomega = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[grid]\nn_points = 1000\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[propagator]\nt_final = 1\n[observables]\nqfunc_times = 2\n"), ConfigError);
}

TEST_CASE("run writes a manifest and reproducible files") {
  const Scenario sc = parse_scenario(kSmall);
  const auto a = scratch("a");
  const auto b = scratch("b");
  const auto ra = run_to_directory(sc, kSmall, a, RunOptions{2, false, false});
  const auto rb = run_to_directory(sc, kSmall, b, RunOptions{1, false, false});
  CHECK_FALSE(ra.failure);
  CHECK(ra.hash == config_hash(kSmall));
  REQUIRE(ra.files.size() == rb.files.size());
  for (const auto& f : ra.files) CHECK(slurp(a / f) == slurp(b / f));

  CHECK(fs::exists(a / "rabi" / "qfunc_t0.5.csv"));
  CHECK(fs::exists(a / "jc" / "wavepacket_t1.csv"));
  const std::string manifest = slurp(a / "manifest.txt");
  CHECK(manifest.find("status = OK") != std::string::npos);
  CHECK(manifest.find("rabi/timeseries.csv") != std::string::npos);

  const std::string header = slurp(a / "rabi" / "timeseries.csv").substr(0, 100);
  CHECK(header.rfind("t,norm,energy,inversion,var_q,var_p,mean_q,mean_p,entropy,re_A,im_A,excitation,fidelity,h_cor\n", 0) == 0);
}

TEST_CASE("sweep rows agree with the single run") {
  Scenario sc = parse_scenario(kSmall);
  sc.runs = {RunKind::rabi};
  sc.qfunc_times.clear();
  sc.snapshot_times.clear();
  sc.sweep_g0 = {0.2, sc.params.g0};
  const auto rows = run_sweep(sc, 2);
  const auto single = simulate(sc, RunKind::rabi);
  REQUIRE(rows.size() == 2 * single.series.size());
  for (std::size_t i = 0; i < single.series.size(); ++i) {
    const auto& row = rows[single.series.size() + i];
    CHECK(row.g0 == sc.params.g0);
    CHECK(row.t == single.series[i].t);
    CHECK(std::abs(row.fidelity - *single.series[i].fidelity) < 1e-12);
  }
  CHECK(rows.front().fidelity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact JC run kind") {
  Scenario sc = parse_scenario(kSmall);
  sc.runs = {RunKind::jc, RunKind::jc_exact};
  sc.fidelity = false;
  const auto num = simulate(sc, RunKind::jc);
  const auto ref = simulate(sc, RunKind::jc_exact);
  REQUIRE(num.series.size() == ref.series.size());
  for (std::size_t i = 0; i < ref.series.size(); ++i) {
    CHECK(num.series[i].inversion == doctest::Approx(ref.series[i].inversion).epsilon(1e-3));
    CHECK(num.series[i].energy == doctest::Approx(ref.series[i].energy).epsilon(1e-4));
  }
}

TEST_CASE("boundary contact is reported as a failed run") {
  Scenario sc = parse_scenario(kSmall);
  sc.field = FieldStateSpec::coherent({0.0, 2.0});
  sc.q_max = 8.0;
  sc.n_points = 128;
  sc.qfunc_times.clear();
  sc.snapshot_times.clear();
  const auto r = simulate(sc, RunKind::jc);
  REQUIRE(r.failure.has_value());
  const auto dir = scratch("fail");
  const auto report = run_to_directory(sc, "x", dir, RunOptions{});
  CHECK(report.failure.has_value());
  CHECK(slurp(dir / "manifest.txt").find("status = FAILED") != std::string::npos);
}

TEST_CASE("presets") {
  const auto names = preset_names();
  CHECK(names.size() == 14);
  CHECK(names.front() == "fig1");
  CHECK(names.back() == "fig16");
  for (const auto& name : names) {
    for (const auto& panel : preset(name)) CHECK_NOTHROW(parse_scenario(panel.config));
  }
  CHECK_THROWS_AS(preset("fig7"), ConfigError);
  const auto fig13 = parse_scenario(preset("fig13")[0].config);
  CHECK(fig13.qfunc_times == std::vector{0.0, 50.0, 62.5, 75.0});
  CHECK(fig13.field.n == 6);
}

TEST_CASE("quick variant") {
  const auto q = quick_variant(parse_scenario(preset("fig2")[0].config));
  CHECK(q.propagator.t_final <= 2.0);
  CHECK(q.sweep_g0.size() == 2);
  CHECK_NOTHROW(q.validate());
}
