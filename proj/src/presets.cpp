#include <algorithm>
#include <map>
#include <string>

#include "jcwave/errors.hpp"
#include "jcwave/scenario.hpp"

namespace jcwave {

namespace {

using Panels = std::vector<PresetPanel>;

std::string coherent(const char* nu_re) {
  return std::string("[field]\nkind = coherent\nnu_re = ") + nu_re + "\n";
}

std::string fock(const char* n) { return std::string("[field]\nkind = fock\nn = ") + n + "\n"; }

std::string model(const char* omega, const char* g0) {
  return std::string("[model]\nomega = ") + omega + "\ng0 = " + g0 + "\n";
}

std::string propagator(const char* dt, const char* t_final, const char* stride) {
  return std::string("[propagator]\ndt = ") + dt + "\nt_final = " + t_final + "\nrecord_stride = " + stride +
         "\n";
}

std::string head(const std::string& name, const char* runs) {
  return "[scenario]\nname = " + name + "\nruns = " + runs + "\n";
}

Panels fig1() {
  Panels out;
  const std::pair<const char*, const char*> sets[] = {{"0.1", "1"}, {"4", "2"}, {"5", "0.3"}, {"0.2", "2"}};
  const char* tags[] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i) {
    out.push_back({tags[i], head(std::string("fig1") + tags[i], "rabi") + model(sets[i].first, sets[i].second) +
                                fock("0") + propagator("1e-3", "0.1", "100") +
                                "[observables]\ncurves = true\nrevival = true\n"});
  }
  return out;
}

Panels fidelity_surface(const char* name, const std::string& field,
                        std::initializer_list<std::pair<const char*, const char*>> panels) {
  Panels out;
  for (const auto& [tag, omega] : panels) {
    out.push_back({tag, head(std::string(name) + tag, "rabi") + model(omega, "0.05") + field +
                            "[grid]\nn_points = 512\nq_max = 20\n" + propagator("2e-3", "50", "50") +
                            "[observables]\nfidelity = true\n[sweep]\ng0 = 0.05:1.0:0.05\n"});
  }
  return out;
}

Panels fig4() {
  return {{"a", head("fig4a", "rabi, jc") + model("0.2", "2") + fock("0") + propagator("1e-3", "40", "10")},
          {"b", head("fig4b", "rabi, jc") + model("4", "2") + fock("0") + propagator("1e-3", "40", "10")}};
}

Panels fig5() {
  const std::string obs = "[observables]\nsnapshot_times = 0:30:2\n";
  return {{"n0", head("fig5_n0", "rabi, jc") + model("0.2", "2") + fock("0") + propagator("1e-3", "30", "10") + obs},
          {"n2", head("fig5_n2", "rabi, jc") + model("0.2", "2") + fock("2") + propagator("1e-3", "30", "10") + obs}};
}

Panels fig6() {
  return {{"", head("fig6", "rabi, adiabatic, jc") + model("5", "0.3") + coherent("4") +
                   propagator("1e-3", "400", "50") +
                   "[observables]\nrevival = true\ncurves = true\nsnapshot_times = 0, 100, 200, 300, 400\n"}};
}

Panels fig8() {
  return {{"", head("fig8", "rabi, adiabatic, jc") + model("0.2", "2") + coherent("4") +
                   propagator("1e-3", "100", "10") + "[observables]\nsnapshot_times = 0:100:20\n"}};
}

Panels fig10() {
  Panels out;
  struct Set {
    const char* tag;
    const char* omega;
    const char* g0;
    const char* nu;
  };
  for (const Set& s : {Set{"a", "0.2", "0.1", "0"}, Set{"b", "2", "0.1", "0"}, Set{"c", "5", "0.3", "4"},
                       Set{"d", "1", "0.2", "4"}}) {
    out.push_back({s.tag, head(std::string("fig10") + s.tag, "rabi, jc") + model(s.omega, s.g0) + coherent(s.nu) +
                              propagator("1e-3", "100", "20")});
  }
  return out;
}

Panels fig11() {
  return {{"ab", head("fig11ab", "rabi, jc") + model("5", "0.3") + coherent("4") + propagator("1e-3", "400", "100") +
                     "[observables]\nqfunc_times = 0:400:50\nqfunc_points = 121\n"},
          {"cd", head("fig11cd", "rabi, jc") + model("1", "1") + coherent("4") + propagator("1e-3", "6", "10") +
                     "[observables]\nqfunc_times = 0:6:1.5\nqfunc_points = 121\n"}};
}

Panels fig12() {
  return {{"", head("fig12", "rabi") + model("1", "1") + coherent("4") + propagator("1e-3", "6", "10") +
                   "[observables]\nclassical = true\ncurves = true\ncontour_energies = 7.98, 16, 24.02\n"}};
}

Panels fig13() {
  return {{"", head("fig13", "rabi") + model("1", "0.5") + fock("6") + propagator("1e-3", "75", "100") +
                   "[observables]\nqfunc_times = 0, 50, 62.5, 75\n"}};
}

Panels fig14() {
  return {{"a", head("fig14a", "rabi, jc") + model("5", "0.3") + coherent("3") + propagator("1e-3", "400", "50") +
                    "[observables]\nrevival = true\n"},
          {"b", head("fig14b", "rabi, jc") + model("1", "1") + fock("0") + propagator("1e-3", "50", "20")}};
}

Panels autocorrelation_panels(const char* name, const char* observables) {
  return {{"a", head(std::string(name) + "a", "rabi, jc") + model("1", "1") + coherent("15") +
                    propagator("1e-3", "150", "20") + observables},
          {"b", head(std::string(name) + "b", "rabi, jc") + model("5", "0.3") + coherent("15") +
                    propagator("1e-3", "400", "50") + observables}};
}

using Factory = Panels (*)();

const std::map<std::string, Factory, std::less<>>& registry() {
  static const std::map<std::string, Factory, std::less<>> presets{
      {"fig1", fig1},
      {"fig2", [] { return fidelity_surface("fig2", fock("0"), {{"a", "2"}, {"b", "0.5"}}); }},
      {"fig3", [] { return fidelity_surface("fig3", coherent("4"), {{"a", "10"}, {"b", "0.1"}}); }},
      {"fig4", fig4},
      {"fig5", fig5},
      {"fig6", fig6},
      {"fig8", fig8},
      {"fig10", fig10},
      {"fig11", fig11},
      {"fig12", fig12},
      {"fig13", fig13},
      {"fig14", fig14},
      {"fig15", [] { return autocorrelation_panels("fig15", "[observables]\nrevival = true\n"); }},
      {"fig16", [] { return autocorrelation_panels("fig16", "[observables]\nspectrum = true\n"); }},
  };
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
    return std::stoi(a.substr(3)) < std::stoi(b.substr(3));
  });
  return names;
}

std::vector<PresetPanel> preset(std::string_view name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw ConfigError("unknown preset '" + std::string(name) + "'");
  return it->second();
}

}  // namespace jcwave
