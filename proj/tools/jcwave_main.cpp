#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "jcwave/errors.hpp"
#include "jcwave/scenario.hpp"

namespace {

enum ExitCode : int { ok = 0, failure = 1, parse_failure = 2, invalid_config = 3, blowup = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw jcwave::Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report(const jcwave::RunReport& r, const std::filesystem::path& dir) {
  std::cout << dir.string() << ": " << r.files.size() << " files";
  if (r.failure) {
    std::cout << ", FAILED: " << *r.failure << '\n';
    return blowup;
  }
  std::cout << '\n';
  return ok;
}

jcwave::Scenario load(const std::string& text, bool quick) {
  jcwave::Scenario sc = jcwave::parse_scenario(text);
  return quick ? jcwave::quick_variant(sc) : sc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-packet simulations of the Rabi and Jaynes-Cummings models"};
  app.require_subcommand(1);

  unsigned workers = 1;
  bool dt_check = false;
  bool quick = false;
  app.add_option("--workers", workers, "Worker threads for runs and sweep points")
      ->check(CLI::Range(1u, std::max(1u, 4 * std::thread::hardware_concurrency())));
  app.add_flag("--dt-check", dt_check, "Repeat each run at dt/2 and report the inversion change");
  app.add_flag("--quick", quick, "Shorten every run to t <= 2 for smoke testing");

  std::string config_path;
  std::string out_dir = "out";
  auto* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", config_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Fidelity surface over the [sweep] axes");
  sweep->add_option("config", config_path, "Scenario file")->required();
  sweep->add_option("--out", out_dir, "Output directory");

  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "Run a built-in figure preset");
  preset->add_option("name", preset_name, "Preset name")->required();
  preset->add_option("--out", out_dir, "Output directory");

  auto* list = app.add_subcommand("list-presets", "Print the available presets");

  CLI11_PARSE(app, argc, argv);

  try {
    const jcwave::RunOptions options{workers, dt_check, false};
    if (*list) {
      for (const auto& name : jcwave::preset_names()) std::cout << name << '\n';
      return ok;
    }
    if (*run || *sweep) {
      const std::string text = read_file(config_path);
      const jcwave::Scenario sc = load(text, quick);
      jcwave::RunOptions opts = options;
      opts.sweep = static_cast<bool>(*sweep);
      return report(jcwave::run_to_directory(sc, text, out_dir, opts), out_dir);
    }
    // Validate every panel before running any, so a bad preset leaves no output.
    const auto panels = jcwave::preset(preset_name);
    std::vector<jcwave::Scenario> scenarios;
    for (const auto& p : panels) scenarios.push_back(load(p.config, quick));
    int status = ok;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const std::filesystem::path dir = std::filesystem::path(out_dir) / preset_name / panels[i].subdir;
      jcwave::RunOptions opts = options;
      opts.sweep = scenarios[i].has_sweep();
      status = std::max(status, report(jcwave::run_to_directory(scenarios[i], panels[i].config, dir, opts), dir));
    }
    return status;
  } catch (const jcwave::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return parse_failure;
  } catch (const jcwave::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return invalid_config;
  } catch (const jcwave::ResolutionError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return invalid_config;
  } catch (const jcwave::NumericalBlowup& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return blowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
}
