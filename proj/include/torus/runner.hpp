#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "torus/solver_config.hpp"

namespace torus {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_solver_abort = 3, exit_invariant = 4 };

struct RunSpec {
  /// decay, manufactured, taylor_green, linearized, custom, certify or selftest.
  std::string command;
  SolverConfig config;
  std::optional<std::string> f_path;     // steady forcing field
  std::optional<std::string> u0_path;    // initial field
  std::optional<std::string> w_path;     // drift: field file (linearized) or trajectory (certify)
  std::optional<std::string> traj_path;  // certify input
  std::optional<std::string> basis_path; // selftest fault injection
  std::vector<std::pair<double, double>> lps;
  bool admissible_only = false;
  std::vector<std::pair<int, int>> bochner;
  std::string out_dir = ".";
  int jobs = 1;
  int dt_study = 0;
  std::vector<int> m_study;
  std::vector<int> selftest_cutoffs;
  double amplitude = 1.0;
  double omega = 10.0;
  std::uint64_t seed = 7;
};

using Setting = std::pair<std::string, std::string>;

/// Flat "key = value" lines; '#' starts a comment. Keys are the long flag names without dashes.
std::vector<Setting> read_config_file(const std::string& path);

/// Applies one setting; list-valued keys (lps, bochner, m_study, cutoffs) append.
/// Throws InvalidArgument for unknown keys or malformed values.
void apply_setting(RunSpec& spec, const Setting& setting);

/// Builds a spec from config-file settings overridden by flag settings. A list key given by flags
/// replaces the config file's list. TORUS_NS_OUT, when set, overrides out_dir.
RunSpec build_spec(const std::string& command, const std::vector<Setting>& config,
                   const std::vector<Setting>& flags);

/// Executes a spec and writes its artifacts below spec.out_dir. Returns an ExitCode; diagnostics go to err.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace torus
