#include "jcwave/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "jcwave/analytic.hpp"
#include "jcwave/classical.hpp"
#include "jcwave/errors.hpp"

namespace jcwave {

namespace fs = std::filesystem;

const char* to_string(RunKind kind) noexcept {
  switch (kind) {
    case RunKind::rabi: return "rabi";
    case RunKind::jc: return "jc";
    case RunKind::jc_interaction: return "jc_interaction";
    case RunKind::adiabatic: return "adiabatic";
    case RunKind::jc_exact: return "jc_exact";
  }
  return "?";
}

RunKind parse_run_kind(std::string_view name) {
  for (const RunKind k : {RunKind::rabi, RunKind::jc, RunKind::jc_interaction, RunKind::adiabatic,
                          RunKind::jc_exact}) {
    if (name == to_string(k)) return k;
  }
  throw ParseError("unknown run kind '" + std::string(name) + "'");
}

ModelParams Scenario::params_for(RunKind kind) const {
  ModelParams p = params;
  switch (kind) {
    case RunKind::rabi:
    case RunKind::adiabatic: p.model = Model::rabi; break;
    case RunKind::jc:
    case RunKind::jc_exact: p.model = Model::jc; break;
    case RunKind::jc_interaction: p.model = Model::jc_interaction; break;
  }
  return p;
}

void Scenario::validate() const {
  params.validate();
  atom.validate();
  propagator.validate();
  make_grid(n_points, q_max);
  if (runs.empty()) throw ConfigError("at least one run is required");
  if (fidelity && std::find(runs.begin(), runs.end(), RunKind::rabi) == runs.end()) {
    throw ConfigError("fidelity needs a rabi run to compare against");
  }
  for (const double t : qfunc_times) {
    if (t < 0.0 || t > propagator.t_final + 1e-12) throw ConfigError("Q-function time outside [0, t_final]");
  }
  for (const double t : snapshot_times) {
    if (t < 0.0 || t > propagator.t_final + 1e-12) throw ConfigError("snapshot time outside [0, t_final]");
  }
  if (qfunc_points < 2) throw ConfigError("qfunc_points must be at least 2");
  if (qfunc_radius < 0.0) throw ConfigError("qfunc_radius must be non-negative");
  if (!(fit_half_width > 0.0)) throw ConfigError("fit_half_width must be positive");
  for (const double g : sweep_g0) {
    if (!(g >= 0.0)) throw ConfigError("sweep g0 values must be non-negative");
  }
  for (const double o : sweep_omega) {
    if (!(o > 0.0)) throw ConfigError("sweep omega values must be positive");
  }
}

// ---------------------------------------------------------------- parsing

namespace {

using boost::property_tree::ptree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

class KeyReader {
 public:
  KeyReader(std::string section, std::string key, std::string value)
      : section_(std::move(section)), key_(std::move(key)), value_(trim(value)) {}

  [[noreturn]] void fail(std::string_view why) const {
    throw ParseError("[" + section_ + "] " + key_ + " = '" + value_ + "': " + std::string(why));
  }

  double number() const { return parse_double(value_); }

  std::size_t count() const {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(value_.data(), value_.data() + value_.size(), v);
    if (ec != std::errc{} || ptr != value_.data() + value_.size()) fail("expected a non-negative integer");
    return v;
  }

  bool flag() const {
    std::string v = value_;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    fail("expected true or false");
  }

  const std::string& text() const noexcept { return value_; }

  /// Comma-separated numbers; an item start:stop:step expands to an inclusive range.
  std::vector<double> numbers() const {
    std::vector<double> out;
    if (value_.empty()) return out;
    std::stringstream ss(value_);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) fail("empty list item");
      if (std::count(item.begin(), item.end(), ':') == 2) {
        const auto c1 = item.find(':');
        const auto c2 = item.find(':', c1 + 1);
        const double start = parse_double(trim(item.substr(0, c1)));
        const double stop = parse_double(trim(item.substr(c1 + 1, c2 - c1 - 1)));
        const double step = parse_double(trim(item.substr(c2 + 1)));
        if (!(step > 0.0) || stop < start) fail("range needs start <= stop and step > 0");
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t k = 0; k < n; ++k) out.push_back(start + static_cast<double>(k) * step);
      } else {
        out.push_back(parse_double(item));
      }
    }
    return out;
  }

  std::vector<std::string> words() const {
    std::vector<std::string> out;
    std::stringstream ss(value_);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

 private:
  double parse_double(const std::string& s) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) fail("expected a number");
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::string section_;
  std::string key_;
  std::string value_;
};

void apply_key(Scenario& sc, const std::string& section, const std::string& key, const KeyReader& r,
               cplx& nu, cplx& c_plus, cplx& c_minus, std::string& atom_state, std::string& field_kind,
               unsigned& fock_n) {
  auto unknown = [&]() { r.fail("unknown key"); };
  if (section == "scenario") {
    if (key == "name") {
      sc.name = r.text();
    } else if (key == "runs") {
      sc.runs.clear();
      for (const auto& w : r.words()) sc.runs.push_back(parse_run_kind(w));
    } else {
      unknown();
    }
  } else if (section == "model") {
    if (key == "omega") sc.params.omega_atom = r.number();
    else if (key == "g0") sc.params.g0 = r.number();
    else unknown();
  } else if (section == "field") {
    if (key == "kind") field_kind = r.text();
    else if (key == "n") fock_n = static_cast<unsigned>(r.count());
    else if (key == "nu_re") nu.real(r.number());
    else if (key == "nu_im") nu.imag(r.number());
    else unknown();
  } else if (section == "atom") {
    if (key == "state") atom_state = r.text();
    else if (key == "c_plus_re") c_plus.real(r.number());
    else if (key == "c_plus_im") c_plus.imag(r.number());
    else if (key == "c_minus_re") c_minus.real(r.number());
    else if (key == "c_minus_im") c_minus.imag(r.number());
    else unknown();
  } else if (section == "grid") {
    if (key == "n_points") sc.n_points = r.count();
    else if (key == "q_max") sc.q_max = r.number();
    else unknown();
  } else if (section == "propagator") {
    if (key == "dt") sc.propagator.dt = r.number();
    else if (key == "t_final") sc.propagator.t_final = r.number();
    else if (key == "record_stride") sc.propagator.record_stride = r.count();
    else if (key == "scheme") {
      try {
        sc.propagator.scheme = parse_scheme(r.text());
      } catch (const ConfigError& e) {
        r.fail(e.what());
      }
    } else unknown();
  } else if (section == "observables") {
    if (key == "fidelity") sc.fidelity = r.flag();
    else if (key == "spectrum") sc.spectrum = r.flag();
    else if (key == "revival") sc.revival = r.flag();
    else if (key == "curves") sc.curves = r.flag();
    else if (key == "classical") sc.classical = r.flag();
    else if (key == "qfunc_times") sc.qfunc_times = r.numbers();
    else if (key == "qfunc_points") sc.qfunc_points = r.count();
    else if (key == "qfunc_radius") sc.qfunc_radius = r.number();
    else if (key == "snapshot_times") sc.snapshot_times = r.numbers();
    else if (key == "contour_energies") sc.contour_energies = r.numbers();
    else if (key == "fit_half_width") sc.fit_half_width = r.number();
    else unknown();
  } else if (section == "sweep") {
    if (key == "g0") sc.sweep_g0 = r.numbers();
    else if (key == "omega") sc.sweep_omega = r.numbers();
    else unknown();
  } else {
    throw ParseError("unknown section [" + section + "]");
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  ptree tree;
  try {
    std::istringstream in{std::string(text)};
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  Scenario sc;
  cplx nu{0.0, 0.0};
  cplx c_plus{1.0, 0.0};
  cplx c_minus{0.0, 0.0};
  std::string atom_state = "excited";
  std::string field_kind = "fock";
  unsigned fock_n = 0;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ParseError("key '" + section + "' must belong to a [section]");
    }
    for (const auto& [key, value] : body) {
      KeyReader reader(section, key, value.data());
      apply_key(sc, section, key, reader, nu, c_plus, c_minus, atom_state, field_kind, fock_n);
    }
  }
  if (field_kind == "fock") {
    sc.field = FieldStateSpec::fock(fock_n);
  } else if (field_kind == "coherent") {
    sc.field = FieldStateSpec::coherent(nu);
  } else {
    throw ParseError("[field] kind = '" + field_kind + "': expected fock or coherent");
  }
  if (atom_state == "excited") {
    sc.atom = AtomStateSpec::excited();
  } else if (atom_state == "ground") {
    sc.atom = AtomStateSpec::ground();
  } else if (atom_state == "superposition") {
    sc.atom = AtomStateSpec::superposition(c_plus, c_minus);
  } else {
    throw ParseError("[atom] state = '" + atom_state + "': expected excited, ground or superposition");
  }
  sc.validate();
  return sc;
}

Scenario quick_variant(const Scenario& scenario) {
  Scenario q = scenario;
  const double dt = q.propagator.dt;
  const double t_final = std::min(q.propagator.t_final, 2.0);
  q.propagator.t_final = std::round(t_final / dt) * dt;
  q.propagator.record_stride = std::max<std::size_t>(1, std::min(q.propagator.record_stride, q.propagator.total_steps()));
  auto clip = [&](std::vector<double>& v) {
    std::erase_if(v, [&](double t) { return t > q.propagator.t_final; });
  };
  clip(q.qfunc_times);
  clip(q.snapshot_times);
  q.qfunc_points = std::min<std::size_t>(q.qfunc_points, 41);
  if (q.sweep_g0.size() > 2) q.sweep_g0.resize(2);
  if (q.sweep_omega.size() > 2) q.sweep_omega.resize(2);
  return q;
}

// ---------------------------------------------------------------- simulation

namespace {

std::vector<std::size_t> event_steps(const Scenario& sc, std::size_t total, std::set<std::size_t>& records,
                                     std::set<std::size_t>& qsteps, std::set<std::size_t>& ssteps) {
  const double dt = sc.propagator.dt;
  for (std::size_t s = 0; s <= total; s += sc.propagator.record_stride) records.insert(s);
  records.insert(total);
  for (const double t : sc.qfunc_times) qsteps.insert(static_cast<std::size_t>(std::llround(t / dt)));
  for (const double t : sc.snapshot_times) ssteps.insert(static_cast<std::size_t>(std::llround(t / dt)));
  std::set<std::size_t> all(records);
  all.insert(qsteps.begin(), qsteps.end());
  all.insert(ssteps.begin(), ssteps.end());
  return {all.begin(), all.end()};
}

AlphaLattice lattice_for(const Scenario& sc) {
  if (sc.qfunc_radius > 0.0) return AlphaLattice::centered(sc.qfunc_radius, sc.qfunc_points);
  AlphaLattice lat = default_alpha_lattice(sc.field);
  lat.n_re = lat.n_im = sc.qfunc_points;
  return lat;
}

WaveSnapshot snapshot_of(double t, const WavePacket& psi) {
  WaveSnapshot s;
  s.t = t;
  s.abs_up.reserve(psi.size());
  s.abs_down.reserve(psi.size());
  for (const auto& z : psi.up()) s.abs_up.push_back(std::abs(z));
  for (const auto& z : psi.down()) s.abs_down.push_back(std::abs(z));
  return s;
}

SimulationResult simulate_exact(const Scenario& sc) {
  SimulationResult res;
  res.kind = RunKind::jc_exact;
  const std::size_t total = sc.propagator.total_steps();
  std::vector<double> times;
  for (std::size_t s = 0; s <= total; s += sc.propagator.record_stride) times.push_back(static_cast<double>(s) * sc.propagator.dt);
  if (times.back() != static_cast<double>(total) * sc.propagator.dt) times.push_back(static_cast<double>(total) * sc.propagator.dt);
  res.series = jc_exact_evolution(sc.field, sc.atom, sc.params_for(RunKind::jc_exact), times);
  return res;
}

}  // namespace

SimulationResult simulate(const Scenario& sc, RunKind kind) {
  sc.validate();
  if (kind == RunKind::jc_exact) return simulate_exact(sc);

  SimulationResult res;
  res.kind = kind;
  const ModelParams params = sc.params_for(kind);
  const GridPtr grid = make_grid(sc.n_points, sc.q_max);
  const WavePacket initial = build_initial(sc.field, sc.atom, grid);
  const double dt = sc.propagator.dt;
  const std::size_t total = sc.propagator.total_steps();
  std::set<std::size_t> records, qsteps, ssteps;
  const auto events = event_steps(sc, total, records, qsteps, ssteps);

  const bool adiabatic_run = kind == RunKind::adiabatic;
  const bool twin = sc.fidelity && kind == RunKind::rabi;
  auto stepper = adiabatic_run ? SplitOperatorPropagator::adiabatic(params, grid, dt, sc.propagator.scheme)
                               : SplitOperatorPropagator::full(params, grid, dt, sc.propagator.scheme);
  std::optional<SplitOperatorPropagator> twin_stepper;
  std::optional<WavePacket> twin_psi;
  if (twin) {
    twin_stepper.emplace(SplitOperatorPropagator::adiabatic(params, grid, dt, sc.propagator.scheme));
    twin_psi.emplace(to_adiabatic_basis(initial, params));
  }
  WavePacket psi = adiabatic_run ? to_adiabatic_basis(initial, params) : initial;
  ObservableEvaluator evaluator(params, initial);
  const AlphaLattice lattice = lattice_for(sc);

  std::size_t at = 0;
  try {
    for (const std::size_t step : events) {
      if (step > at) {
        stepper.advance(psi, step - at);
        if (twin) twin_stepper->advance(*twin_psi, step - at);
        at = step;
      }
      const double t = static_cast<double>(step) * dt;
      if (psi.boundary_ratio() > sc.propagator.boundary_tolerance) {
        throw NumericalBlowup("wave packet reached the grid boundary at t = " + format_number(t));
      }
      const WavePacket bare = adiabatic_run ? from_adiabatic_basis(psi, params) : psi;
      if (records.contains(step)) {
        Record r = evaluator.evaluate(t, bare);
        if (twin) {
          r.fidelity = fidelity(psi, *twin_psi, params);
          r.h_cor = h_cor_expectation(*twin_psi, params);
        } else if (adiabatic_run) {
          r.h_cor = h_cor_expectation(psi, params);
        }
        res.series.push_back(r);
      }
      if (qsteps.contains(step)) res.qframes.push_back(q_function(bare, lattice, t));
      if (ssteps.contains(step)) res.snapshots.push_back(snapshot_of(t, bare));
    }
  } catch (const NumericalBlowup& e) {
    res.failure = e.what();
  }
  return res;
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const Scenario& sc, unsigned workers) {
  sc.validate();
  const std::vector<double> g0s = sc.sweep_g0.empty() ? std::vector<double>{sc.params.g0} : sc.sweep_g0;
  const std::vector<double> omegas =
      sc.sweep_omega.empty() ? std::vector<double>{sc.params.omega_atom} : sc.sweep_omega;
  struct Point {
    double omega;
    double g0;
  };
  std::vector<Point> points;
  for (const double o : omegas) {
    for (const double g : g0s) points.push_back({o, g});
  }
  std::vector<std::vector<SweepRow>> rows(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) {
    Scenario one = sc;
    one.params.omega_atom = points[i].omega;
    one.params.g0 = points[i].g0;
    one.runs = {RunKind::rabi};
    one.fidelity = true;
    one.qfunc_times.clear();
    one.snapshot_times.clear();
    const SimulationResult r = simulate(one, RunKind::rabi);
    if (r.failure) {
      throw NumericalBlowup("sweep point omega=" + format_number(points[i].omega) +
                            " g0=" + format_number(points[i].g0) + ": " + *r.failure);
    }
    for (const Record& rec : r.series) rows[i].push_back({points[i].g0, points[i].omega, rec.t, *rec.fidelity});
  });
  std::vector<SweepRow> out;
  for (auto& block : rows) out.insert(out.end(), block.begin(), block.end());
  return out;
}

std::uint64_t config_hash(std::string_view text) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------- output

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

namespace {

/// Short label for file names: shortest round-trip representation.
std::string time_label(double t) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t);
  return std::string(buf, ptr);
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::string_view header) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
  }

  CsvWriter& operator<<(double v) {
    sep();
    out_ << format_number(v);
    return *this;
  }
  CsvWriter& operator<<(std::size_t v) {
    sep();
    out_ << v;
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ofstream out_;
  bool first_ = true;
};

struct OutputSink {
  fs::path root;
  std::vector<fs::path> files;

  fs::path file(const fs::path& relative) {
    const fs::path full = root / relative;
    fs::create_directories(full.parent_path());
    files.push_back(relative);
    return full;
  }
};

void write_qframe(const fs::path& path, const QFunctionFrame& f) {
  CsvWriter w(path, "alpha_re,alpha_im,Q");
  for (std::size_t i = 0; i < f.alpha_re.size(); ++i) {
    for (std::size_t j = 0; j < f.alpha_im.size(); ++j) {
      w << f.alpha_re[i] << f.alpha_im[j] << f.at(i, j);
      w.end_row();
    }
  }
}

void write_snapshot(const fs::path& path, const WaveSnapshot& s, const Grid& grid) {
  CsvWriter w(path, "q,abs_up,abs_down");
  const auto q = grid.q();
  for (std::size_t k = 0; k < q.size(); ++k) {
    w << q[k] << s.abs_up[k] << s.abs_down[k];
    w.end_row();
  }
}

void write_spectrum(const fs::path& path, const Spectrum& s) {
  CsvWriter w(path, "epsilon,power");
  for (std::size_t i = 0; i < s.epsilon.size(); ++i) {
    w << s.epsilon[i] << s.power[i];
    w.end_row();
  }
}

void write_curves(const fs::path& path, const Scenario& sc) {
  const GridPtr grid = make_grid(sc.n_points, sc.q_max);
  const ModelParams rabi = sc.params_for(RunKind::rabi);
  const AdiabaticCurves ad = adiabatic_curves(rabi, *grid);
  const DiabaticCurves di = diabatic_curves(rabi, *grid);
  CsvWriter w(path, "q,v_plus,v_minus,diabatic_plus_shift,diabatic_minus_shift,dtheta,d2theta");
  const auto q = grid->q();
  for (std::size_t k = 0; k < q.size(); ++k) {
    w << q[k] << ad.v_plus[k] << ad.v_minus[k] << di.plus_shift[k] << di.minus_shift[k] << ad.dtheta[k]
      << ad.d2theta[k];
    w.end_row();
  }
}

void write_classical(OutputSink& sink, const Scenario& sc) {
  const ModelParams rabi = sc.params_for(RunKind::rabi);
  const cplx alpha = sc.field.kind == FieldKind::coherent ? sc.field.nu
                                                          : cplx{std::sqrt(static_cast<double>(sc.field.n)), 0.0};
  // alpha = (q_c - i p_c)/sqrt(2).
  const double q0 = std::numbers::sqrt2 * alpha.real();
  const double p0 = -std::numbers::sqrt2 * alpha.imag();
  for (const Sheet sheet : {Sheet::upper, Sheet::lower}) {
    const char* label = sheet == Sheet::upper ? "upper" : "lower";
    const auto traj = classical_trajectory({0.0, q0, p0, sheet}, rabi, sc.propagator.dt, sc.propagator.t_final);
    CsvWriter w(sink.file(std::string("trajectory_") + label + ".csv"), "t,q,p,energy");
    const std::size_t stride = sc.propagator.record_stride;
    for (std::size_t i = 0; i < traj.size(); i += stride) {
      w << traj[i].t << traj[i].q << traj[i].p << classical_energy(traj[i], rabi);
      w.end_row();
    }
    for (const double eps : sc.contour_energies) {
      if (eps <= sheet_minimum(sheet, rabi)) continue;
      const EnergyManifold m = manifold_contour(eps, sheet, rabi);
      CsvWriter c(sink.file(std::string("contour_") + label + "_e" + time_label(eps) + ".csv"), "loop,q,p");
      for (std::size_t l = 0; l < m.loops.size(); ++l) {
        for (const auto& pt : m.loops[l]) {
          c << l << pt.q << pt.p;
          c.end_row();
        }
      }
    }
  }
}

void write_revival_summary(const fs::path& path, const Scenario& sc,
                           const std::vector<SimulationResult>& results) {
  std::ofstream out(path, std::ios::binary);
  if (sc.params.g0 > 0.0) {
    const RevivalEstimate r = revival_estimates(sc.params_for(RunKind::rabi), sc.field, sc.fit_half_width);
    out << "t_r_adiabatic = " << format_number(r.t_r_adiabatic) << '\n'
        << "t_r_adiabatic_valid = " << (r.adiabatic_valid ? "true" : "false") << '\n'
        << "t_r_standard = " << format_number(r.t_r_standard) << '\n'
        << "t_r_curvature = " << format_number(r.t_r_numeric_curvature) << '\n'
        << "curvature_fit_half_width = " << format_number(sc.fit_half_width) << '\n'
        << "omega_plus = " << format_number(r.omega_plus) << '\n'
        << "omega_minus = " << format_number(r.omega_minus) << '\n'
        << "double_well = " << (r.double_well ? "true" : "false") << '\n';
  }
  for (const auto& res : results) {
    if (res.series.size() < 3) continue;
    const auto t = res.series.times();
    const auto inv = res.series.column(&Record::inversion);
    const auto ent = res.series.column(&Record::entropy);
    std::vector<double> abs_a;
    for (const auto& a : res.series.autocorrelation()) abs_a.push_back(std::abs(a));
    const std::string k = to_string(res.kind);
    if (const auto tr = revival_from_autocorrelation(t, abs_a)) {
      out << k << ".revival_autocorrelation = " << format_number(*tr) << '\n';
    }
    // Skip the first collapse before looking for the revival envelope.
    if (const auto tr = revival_from_inversion(t, inv, 0.25 * t.back())) {
      out << k << ".revival_inversion = " << format_number(*tr) << '\n';
      if (const auto tm = entropy_minimum_time(t, ent, 0.25 * *tr, 0.75 * *tr)) {
        out << k << ".entropy_minimum = " << format_number(*tm) << '\n';
      }
    }
  }
}

void write_manifest(const fs::path& dir, const RunReport& report) {
  std::ofstream out(dir / "manifest.txt", std::ios::binary);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(report.hash));
  out << "config_hash = " << hash << '\n';
  out << "status = " << (report.failure ? "FAILED" : "OK") << '\n';
  if (report.failure) out << "failure = " << *report.failure << '\n';
  for (const auto& f : report.files) out << "file = " << f.generic_string() << '\n';
}

}  // namespace

void write_timeseries_csv(const fs::path& path, const TimeSeries& series) {
  std::string header = "t,norm,energy,inversion,var_q,var_p,mean_q,mean_p,entropy,re_A,im_A,excitation";
  const bool fid = series.has_fidelity();
  const bool hcor = series.has_h_cor();
  if (fid) header += ",fidelity";
  if (hcor) header += ",h_cor";
  CsvWriter w(path, header);
  for (const Record& r : series) {
    w << r.t << r.norm << r.energy << r.inversion << r.var_q << r.var_p << r.mean_q << r.mean_p << r.entropy
      << r.autocorrelation.real() << r.autocorrelation.imag() << r.excitation;
    if (fid) w << r.fidelity.value_or(std::nan(""));
    if (hcor) w << r.h_cor.value_or(std::nan(""));
    w.end_row();
  }
}

RunReport run_to_directory(const Scenario& sc, std::string_view config_text, const fs::path& dir,
                           const RunOptions& options) {
  sc.validate();
  fs::create_directories(dir);
  OutputSink sink{dir, {}};
  RunReport report;
  report.hash = config_hash(config_text);

  if (options.sweep) {
    if (!sc.has_sweep()) throw ConfigError("sweep mode needs [sweep] g0 and/or omega values");
    try {
      const auto rows = run_sweep(sc, options.workers);
      CsvWriter w(sink.file("sweep.csv"), "g0,omega,t,fidelity");
      for (const auto& r : rows) {
        w << r.g0 << r.omega << r.t << r.fidelity;
        w.end_row();
      }
    } catch (const NumericalBlowup& e) {
      report.failure = e.what();
    }
    report.files = sink.files;
    write_manifest(dir, report);
    return report;
  }

  std::vector<SimulationResult> results(sc.runs.size());
  parallel_for(sc.runs.size(), options.workers, [&](std::size_t i) { results[i] = simulate(sc, sc.runs[i]); });

  const GridPtr grid = make_grid(sc.n_points, sc.q_max);
  const bool nested = sc.runs.size() > 1;
  for (const auto& res : results) {
    const fs::path sub = nested ? fs::path(to_string(res.kind)) : fs::path();
    write_timeseries_csv(sink.file(sub / "timeseries.csv"), res.series);
    if (sc.spectrum && res.series.size() >= 2) write_spectrum(sink.file(sub / "spectrum.csv"), spectrum(res.series));
    for (const auto& f : res.qframes) write_qframe(sink.file(sub / ("qfunc_t" + time_label(f.t) + ".csv")), f);
    for (const auto& s : res.snapshots) {
      write_snapshot(sink.file(sub / ("wavepacket_t" + time_label(s.t) + ".csv")), s, *grid);
    }
    if (res.failure && !report.failure) report.failure = std::string(to_string(res.kind)) + ": " + *res.failure;
  }
  if (sc.curves) write_curves(sink.file("curves.csv"), sc);
  if (sc.classical) write_classical(sink, sc);
  if (sc.revival) write_revival_summary(sink.file("revival.txt"), sc, results);

  if (options.dt_check && !report.failure) {
    Scenario fine = sc;
    fine.propagator.dt = 0.5 * sc.propagator.dt;
    fine.propagator.record_stride = 2 * sc.propagator.record_stride;
    fine.qfunc_times.clear();
    fine.snapshot_times.clear();
    std::ofstream out(sink.file("dt_check.txt"), std::ios::binary);
    out << "dt = " << format_number(sc.propagator.dt) << '\n' << "dt_half = " << format_number(fine.propagator.dt) << '\n';
    for (const auto& res : results) {
      if (res.kind == RunKind::jc_exact) continue;
      const SimulationResult half = simulate(fine, res.kind);
      double worst = 0.0;
      const std::size_t n = std::min(half.series.size(), res.series.size());
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(half.series[i].inversion - res.series[i].inversion));
      }
      out << to_string(res.kind) << ".max_inversion_change = " << format_number(worst) << '\n';
    }
  }

  report.files = sink.files;
  write_manifest(dir, report);
  return report;
}

}  // namespace jcwave
