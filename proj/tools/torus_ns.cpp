#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torus/error.hpp"
#include "torus/runner.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
  bool repeatable;
};

constexpr FlagSpec flag_specs[] = {
    {"--mu", "mu", "viscosity", false},
    {"--T", "T", "time horizon", false},
    {"--dt", "dt", "time step (largest step of a --dt-study)", false},
    {"--M", "M", "shell cutoff", false},
    {"--ell", "ell", "torus side length", false},
    {"--scheme", "scheme", "imex_euler or if_rk4", false},
    {"--grid", "grid", "product grid size (power of two, 0 = automatic)", false},
    {"--store-every", "store_every", "store every n-th step", false},
    {"--tolerance", "tolerance", "reject runs whose step-halving estimate exceeds this", false},
    {"--out-dir", "out_dir", "artifact directory (TORUS_NS_OUT overrides)", false},
    {"--lps", "lps", "LPS exponent pair s,r", true},
    {"--admissible-only", "admissible_only", "reject inadmissible LPS pairs (1/0)", false},
    {"--bochner", "bochner", "Bochner scale indices k,s", true},
    {"--jobs", "jobs", "parallel study points", false},
    {"--dt-study", "dt_study", "number of halved time steps", false},
    {"--m-study", "m_study", "comma-separated cutoffs for a spatial study", true},
    {"--cutoffs", "cutoffs", "comma-separated selftest cutoffs", true},
    {"--f", "f", "steady forcing field file", false},
    {"--u0", "u0", "initial field file", false},
    {"--w", "w", "drift field (linearized) or trajectory (certify)", false},
    {"--traj", "traj", "trajectory file to certify", false},
    {"--basis", "basis", "basis dump to check in selftest", false},
    {"--amplitude", "amplitude", "amplitude of built-in initial data", false},
    {"--omega", "omega", "time frequency of the manufactured solution", false},
    {"--seed", "seed", "random seed", false},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-Galerkin Navier-Stokes runs and a priori estimate certificates on the 3-torus"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file; flags override it");

  std::map<std::string, std::vector<std::string>> values;
  for (const char* name : {"decay", "manufactured", "taylor_green", "linearized", "custom", "certify", "selftest"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    for (const auto& f : flag_specs) {
      auto* opt = sub->add_option(f.flag, values[f.key], f.help);
      if (f.repeatable) {
        opt->take_all();
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
      } else {
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      }
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : torus::exit_config;
  }

  const auto* sub = app.get_subcommands().front();
  std::vector<torus::Setting> flags;
  for (const auto& f : flag_specs) {
    if (sub->count(f.flag) == 0) continue;
    for (const auto& v : values[f.key]) flags.emplace_back(f.key, v);
  }
  try {
    const auto config = config_path.empty() ? std::vector<torus::Setting>{} : torus::read_config_file(config_path);
    const auto spec = torus::build_spec(sub->get_name(), config, flags);
    return torus::run(spec, std::cout, std::cerr);
  } catch (const torus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return torus::exit_config;
  }
}
