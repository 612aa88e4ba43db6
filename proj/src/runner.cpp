#include "torus/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "torus/certificate_json.hpp"
#include "torus/eigenbasis.hpp"
#include "torus/error.hpp"
#include "torus/estimates.hpp"
#include "torus/fft.hpp"
#include "torus/field_io.hpp"
#include "torus/grid.hpp"
#include "torus/helmholtz.hpp"
#include "torus/linearized.hpp"
#include "torus/navier_stokes.hpp"
#include "torus/operators.hpp"
#include "torus/problems.hpp"
#include "torus/selftest.hpp"

namespace torus {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw InvalidArgument("bad value for " + key + ": '" + v + "'");
  return out;
}

long parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw InvalidArgument("bad value for " + key + ": '" + v + "'");
  return out;
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(trim(part));
  return out;
}

std::pair<std::string, std::string> parse_pair(const std::string& key, const std::string& v) {
  const auto parts = split(v, ',');
  if (parts.size() != 2) throw InvalidArgument(key + " expects two comma-separated values, got '" + v + "'");
  return {parts[0], parts[1]};
}

double parse_exponent(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  return parse_double(key, v);
}

bool is_list_key(const std::string& key) {
  return key == "lps" || key == "bochner" || key == "m_study" || key == "cutoffs";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path artifact(const RunSpec& spec, const std::string& name) {
  std::filesystem::create_directories(spec.out_dir);
  return std::filesystem::path(spec.out_dir) / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

void require_file(const std::optional<std::string>& path, const std::string& what) {
  if (path && !std::filesystem::exists(*path)) throw InvalidArgument(what + " file not found: " + *path);
}

int product_grid(const RunSpec& spec, const SpectralLayout& layout) {
  return spec.config.grid == 0 ? dealias_grid_size(layout) : spec.config.grid;
}

std::vector<std::pair<double, double>> lps_pairs(const RunSpec& spec) {
  if (spec.lps.empty()) return {{4.0, 6.0}};
  return spec.lps;
}

std::string norm_csv(const FieldTrajectory& traj, const RunSpec& spec) {
  const int n = product_grid(spec, traj.layout());
  const auto [s, r] = lps_pairs(spec).front();
  const auto partial = lps_partial(traj, s, r, n);
  std::string out = "t,l2,h1,h2,linf,div,lps_partial\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& u = traj.fields[i];
    const double l2 = l2_norm_exact(u);
    const double g1 = gradient_seminorm(u, 1);
    const double g2 = gradient_seminorm(u, 2);
    const double h1 = std::sqrt(l2 * l2 + g1 * g1);
    const double h2 = std::sqrt(h1 * h1 + g2 * g2);
    const double linf = lp_norm(u, std::numeric_limits<double>::infinity(), n);
    out += fmt(traj.times[i]) + "," + fmt(l2) + "," + fmt(h1) + "," + fmt(h2) + "," + fmt(linf) + "," +
           fmt(l2_norm_exact(div(u))) + "," + fmt(partial[i]) + "\n";
  }
  return out;
}

struct Reports {
  EnergyCertificate certificate;
  std::vector<LpsReport> lps;
  std::map<std::string, double> norms;
};

Reports evaluate(const FieldTrajectory& traj, const Forcing& f, const VectorField& u0, const RunSpec& spec,
                 const FieldTrajectory* drift) {
  Reports rep;
  const int n = product_grid(spec, traj.layout());
  rep.certificate = energy_certificate(traj, f, u0, spec.config.mu, drift, n);
  for (const auto& [s, r] : lps_pairs(spec)) rep.lps.push_back(lps_norm(traj, s, r, n));
  for (const auto& [k, s] : spec.bochner)
    rep.norms["bochner_" + std::to_string(k) + "_" + std::to_string(s)] =
        bochner_scale_norm(traj, k, s, spec.config.mu, f, n).value;
  rep.norms["time_sup_l2"] = time_lp_norm(traj, std::numeric_limits<double>::infinity());
  return rep;
}

void write_outputs(const RunSpec& spec, const std::string& stem, const FieldTrajectory& traj, const Reports& rep) {
  {
    std::ofstream out(artifact(spec, stem + ".traj"), std::ios::binary);
    write_trajectory(out, traj);
  }
  write_text(artifact(spec, stem + ".csv"), norm_csv(traj, spec));
  write_text(artifact(spec, stem + ".json"), certificate_json(rep.certificate, rep.lps, rep.norms));
}

void summarize(std::ostream& out, const std::string& stem, const Reports& rep) {
  out << stem << ": lhs2 " << fmt(rep.certificate.lhs2) << " rhs2 " << fmt(rep.certificate.rhs2) << " ratio "
      << fmt(rep.certificate.ratio) << " factor " << fmt(rep.certificate.factor) << " certificate "
      << (rep.certificate.pass ? "pass" : "FAIL") << "\n";
  for (const auto& [key, value] : rep.norms) out << "  " << key << " = " << fmt(value) << "\n";
}

int finish(const RunSpec& spec, const std::string& stem, const FieldTrajectory& traj, const Reports& rep,
           std::ostream& out, std::ostream& err) {
  write_outputs(spec, stem, traj, rep);
  summarize(out, stem, rep);
  if (!rep.certificate.pass) {
    err << "energy certificate failed: lhs2 " << fmt(rep.certificate.lhs2) << " > factor * rhs2\n";
    return exit_invariant;
  }
  return exit_ok;
}

VectorField load_field(const std::string& path, const SpectralLayout& layout) {
  auto u = read_vector_field_file(path);
  require_same_domain(u.layout(), layout);
  return u.resampled(layout);
}

Forcing load_forcing(const RunSpec& spec, const SpectralLayout& layout) {
  if (!spec.f_path) return Forcing::zero(layout);
  return Forcing::steady(load_field(*spec.f_path, layout));
}

int run_decay(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto& c = spec.config;
  const SpectralLayout layout(c.ell, c.cutoff);
  const auto f = Forcing::zero(layout);
  const auto u0 = shear_mode(layout, spec.amplitude);
  const auto run = solve_navier_stokes(f, u0, c);
  const auto& traj = run.trajectory;
  auto rep = evaluate(traj, f, u0, spec, nullptr);

  const double lambda = c.mu * layout.wavenumber() * layout.wavenumber();
  auto exact = u0;
  exact *= std::exp(-lambda * traj.times.back());
  rep.norms["final_l2_error"] = l2_norm_exact(traj.fields.back() - exact);
  const auto pressure = recover_pressure_series(traj, f, product_grid(spec, layout));
  const auto res = residual(traj, pressure, f, c.mu, product_grid(spec, layout));
  rep.norms["max_residual"] = *std::max_element(res.begin(), res.end());
  double defect = 0.0;
  for (double d : energy_identity_defect(traj, f, c.mu)) defect = std::max(defect, std::abs(d));
  rep.norms["max_energy_defect"] = defect;
  rep.norms["closed_form_ratio"] = 1.0 + (1.0 - std::exp(-2.0 * lambda * traj.times.back())) / 2.0;
  rep.norms["max_cfl"] = run.max_cfl;
  if (run.cfl_advisory) err << "advisory: CFL number " << fmt(run.max_cfl) << " exceeds 0.5\n";
  return finish(spec, "decay", traj, rep, out, err);
}

int run_taylor_green(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto& c = spec.config;
  const SpectralLayout layout(c.ell, c.cutoff);
  const auto f = load_forcing(spec, layout);
  const auto u0 = taylor_green(layout, spec.amplitude);
  const auto run = solve_navier_stokes(f, u0, c);
  auto rep = evaluate(run.trajectory, f, u0, spec, nullptr);
  double defect = 0.0;
  for (double d : energy_identity_defect(run.trajectory, f, c.mu)) defect = std::max(defect, std::abs(d));
  rep.norms["max_energy_defect"] = defect;
  rep.norms["max_cfl"] = run.max_cfl;
  if (run.cfl_advisory) err << "advisory: CFL number " << fmt(run.max_cfl) << " exceeds 0.5\n";
  return finish(spec, "taylor_green", run.trajectory, rep, out, err);
}

int run_custom(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  if (!spec.u0_path) throw InvalidArgument("custom runs need --u0");
  const auto& c = spec.config;
  const SpectralLayout layout(c.ell, c.cutoff);
  const auto f = load_forcing(spec, layout);
  const auto u0 = load_field(*spec.u0_path, layout);
  const auto run = solve_navier_stokes(f, u0, c);
  auto rep = evaluate(run.trajectory, f, run.trajectory.fields.front(), spec, nullptr);
  rep.norms["max_cfl"] = run.max_cfl;
  if (run.cfl_advisory) err << "advisory: CFL number " << fmt(run.max_cfl) << " exceeds 0.5\n";
  return finish(spec, "custom", run.trajectory, rep, out, err);
}

// Runs independent study points on up to `jobs` threads; results keep the input order.
template <class Result>
std::vector<Result> fan_out(std::size_t count, int jobs, const std::function<Result(std::size_t)>& work) {
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          slots[i] = work(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Result> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

ManufacturedSolution::Params manufactured_params(const RunSpec& spec) {
  ManufacturedSolution::Params p;
  p.mu = spec.config.mu;
  p.omega = spec.omega;
  p.amplitude = spec.amplitude;
  p.seed = spec.seed;
  return p;
}

int run_manufactured(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto& c = spec.config;
  const auto params = manufactured_params(spec);
  if (spec.dt_study == 0 && spec.m_study.empty()) {
    const SpectralLayout layout(c.ell, c.cutoff);
    const ManufacturedSolution ms(layout, params);
    const auto f = ms.forcing();
    const auto u0 = ms.exact(0.0);
    const auto run = solve_navier_stokes(f, u0, c);
    auto rep = evaluate(run.trajectory, f, u0, spec, nullptr);
    rep.norms["final_l2_error"] = l2_norm_exact(run.trajectory.fields.back() - ms.exact(run.trajectory.times.back()));
    double defect = 0.0;
    for (double d : energy_identity_defect(run.trajectory, f, c.mu)) defect = std::max(defect, std::abs(d));
    rep.norms["max_energy_defect"] = defect;
    return finish(spec, "manufactured", run.trajectory, rep, out, err);
  }
  if (spec.dt_study > 0) {
    const SpectralLayout layout(c.ell, c.cutoff);
    const ManufacturedSolution ms(layout, params);
    const auto f = ms.forcing();
    const auto count = static_cast<std::size_t>(spec.dt_study);
    const auto errors = fan_out<double>(count, spec.jobs, [&](std::size_t i) {
      SolverConfig point = c;
      point.dt = c.dt / std::pow(2.0, static_cast<double>(i));
      point.store_every = std::numeric_limits<int>::max();
      const auto run = solve_navier_stokes(f, ms.exact(0.0), point);
      return l2_norm_exact(run.trajectory.fields.back() - ms.exact(run.trajectory.times.back()));
    });
    std::string csv = "dt,error,observed_order\n";
    for (std::size_t i = 0; i < count; ++i) {
      const double dt = c.dt / std::pow(2.0, static_cast<double>(i));
      const double order = i == 0 ? std::numeric_limits<double>::quiet_NaN() : std::log2(errors[i - 1] / errors[i]);
      csv += fmt(dt) + "," + fmt(errors[i]) + "," + (i == 0 ? std::string() : fmt(order)) + "\n";
    }
    write_text(artifact(spec, "manufactured_dt.csv"), csv);
    out << csv;
  }
  if (!spec.m_study.empty()) {
    const int top = *std::max_element(spec.m_study.begin(), spec.m_study.end());
    const SpectralLayout reference(c.ell, std::max(36, 2 * top));
    const ManufacturedSolution ms(reference, params);
    const auto f = ms.forcing();
    const auto errors = fan_out<double>(spec.m_study.size(), spec.jobs, [&](std::size_t i) {
      SolverConfig point = c;
      point.cutoff = spec.m_study[i];
      point.grid = 0;
      point.store_every = std::numeric_limits<int>::max();
      const SpectralLayout layout(c.ell, point.cutoff);
      const auto run = solve_navier_stokes(f, ms.exact(0.0).resampled(layout), point);
      const auto& last = run.trajectory.fields.back();
      return l2_norm_exact(last.resampled(reference) - ms.exact(run.trajectory.times.back()));
    });
    std::string csv = "M,error\n";
    for (std::size_t i = 0; i < errors.size(); ++i) csv += std::to_string(spec.m_study[i]) + "," + fmt(errors[i]) + "\n";
    write_text(artifact(spec, "manufactured_m.csv"), csv);
    out << csv;
  }
  return exit_ok;
}

int run_linearized(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto& c = spec.config;
  const SpectralLayout layout(c.ell, c.cutoff);
  std::mt19937_64 rng(spec.seed);
  const auto w = spec.w_path ? load_field(*spec.w_path, layout) : taylor_green(layout, spec.amplitude);
  const auto u0 = spec.u0_path ? load_field(*spec.u0_path, layout) : random_solenoidal(layout, rng, 0.5);
  const auto fs = spec.f_path ? load_field(*spec.f_path, layout) : random_solenoidal(layout, rng, 0.5);
  const auto f = Forcing::steady(fs);

  FieldTrajectory drift;
  drift.times = {0.0};
  drift.fields = {w};
  auto basis = std::make_shared<const DivFreeBasis>(DivFreeBasis::build(c.ell, c.cutoff));
  const auto op = assemble_linearized(drift, basis, c.mu, c.grid);
  const auto sol = solve_linearized(op, f, u0, c);

  const auto a = op.matrix_at(0.0);
  const auto coords = [&](const VectorField& v) {
    const auto x = project_coefficients(v, *basis);
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())));
  };
  const auto exact = linearized_closed_form(a, coords(fs), coords(leray_project(u0)), sol.trajectory.times.back());

  drift.times = {0.0, sol.trajectory.times.back()};
  drift.fields = {w, w};
  auto rep = evaluate(sol.trajectory, f, sol.trajectory.fields.front(), spec, &drift);
  rep.norms["closed_form_gap"] = (sol.coefficients.back() - exact).cwiseAbs().maxCoeff();
  rep.norms["error_estimate"] = sol.error_estimate;
  rep.norms["form_discrepancy"] = op.form_discrepancy;
  return finish(spec, "linearized", sol.trajectory, rep, out, err);
}

int run_certify(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  if (!spec.traj_path) throw InvalidArgument("certify needs --traj");
  for (const auto& [s, r] : spec.lps)
    if (spec.admissible_only && !lps_admissible(s, r))
      throw InvalidArgument("LPS pair (" + fmt(s) + "," + fmt(r) + ") is not admissible");
  const auto traj = read_trajectory_file(*spec.traj_path);
  const auto& layout = traj.layout();
  const auto f = load_forcing(spec, layout);
  const auto u0 = spec.u0_path ? load_field(*spec.u0_path, layout) : traj.fields.front();
  std::optional<FieldTrajectory> drift;
  if (spec.w_path) drift = read_trajectory_file(*spec.w_path);
  const auto rep = evaluate(traj, f, u0, spec, drift ? &*drift : nullptr);
  const auto json = certificate_json(rep.certificate, rep.lps, rep.norms);
  write_text(artifact(spec, "certificate.json"), json);
  out << json;
  if (!rep.certificate.pass) {
    err << "energy certificate failed\n";
    return exit_invariant;
  }
  return exit_ok;
}

int run_selftest_command(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  SelftestOptions options;
  options.ell = spec.config.ell;
  options.seed = spec.seed;
  if (!spec.selftest_cutoffs.empty()) options.cutoffs = spec.selftest_cutoffs;
  options.basis_path = spec.basis_path;
  const auto checks = run_selftest(options);
  print_selftest(out, checks);
  for (const auto& c : checks)
    if (!c.pass) {
      err << "selftest failed: " << c.name << " (M = " << c.cutoff << ")\n";
      return exit_invariant;
    }
  return exit_ok;
}

}  // namespace

std::vector<Setting> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  std::vector<Setting> out;
  int number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(number) + ": expected key = value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void apply_setting(RunSpec& spec, const Setting& setting) {
  const auto& [key, v] = setting;
  auto& c = spec.config;
  if (key == "mu") c.mu = parse_double(key, v);
  else if (key == "T") c.T = parse_double(key, v);
  else if (key == "dt") c.dt = parse_double(key, v);
  else if (key == "M") c.cutoff = static_cast<int>(parse_int(key, v));
  else if (key == "ell") c.ell = parse_double(key, v);
  else if (key == "scheme") c.scheme = parse_scheme(v);
  else if (key == "grid") c.grid = static_cast<int>(parse_int(key, v));
  else if (key == "store_every") c.store_every = static_cast<int>(parse_int(key, v));
  else if (key == "tolerance") c.error_tolerance = parse_double(key, v);
  else if (key == "f") spec.f_path = v;
  else if (key == "u0") spec.u0_path = v;
  else if (key == "w") spec.w_path = v;
  else if (key == "traj") spec.traj_path = v;
  else if (key == "basis") spec.basis_path = v;
  else if (key == "out_dir") spec.out_dir = v;
  else if (key == "jobs") spec.jobs = static_cast<int>(parse_int(key, v));
  else if (key == "dt_study") spec.dt_study = static_cast<int>(parse_int(key, v));
  else if (key == "amplitude") spec.amplitude = parse_double(key, v);
  else if (key == "omega") spec.omega = parse_double(key, v);
  else if (key == "seed") spec.seed = static_cast<std::uint64_t>(parse_int(key, v));
  else if (key == "admissible_only") spec.admissible_only = v == "1" || v == "true";
  else if (key == "lps") {
    const auto [s, r] = parse_pair(key, v);
    spec.lps.emplace_back(parse_exponent(key, s), parse_exponent(key, r));
  } else if (key == "bochner") {
    const auto [k, s] = parse_pair(key, v);
    spec.bochner.emplace_back(static_cast<int>(parse_int(key, k)), static_cast<int>(parse_int(key, s)));
  } else if (key == "m_study") {
    for (const auto& part : split(v, ',')) spec.m_study.push_back(static_cast<int>(parse_int(key, part)));
  } else if (key == "cutoffs") {
    for (const auto& part : split(v, ',')) spec.selftest_cutoffs.push_back(static_cast<int>(parse_int(key, part)));
  } else {
    throw InvalidArgument("unknown setting '" + key + "'");
  }
}

RunSpec build_spec(const std::string& command, const std::vector<Setting>& config, const std::vector<Setting>& flags) {
  RunSpec spec;
  spec.command = command;
  if (command == "manufactured") spec.config.dt = 4e-3;
  for (const auto& s : config) {
    const bool overridden = is_list_key(s.first) && std::any_of(flags.begin(), flags.end(), [&](const Setting& f) {
                              return f.first == s.first;
                            });
    if (!overridden) apply_setting(spec, s);
  }
  for (const auto& s : flags) apply_setting(spec, s);
  if (const char* env = std::getenv("TORUS_NS_OUT"); env != nullptr && *env != '\0') spec.out_dir = env;
  if (spec.jobs < 1) throw InvalidArgument("jobs must be >= 1");
  if (spec.dt_study < 0) throw InvalidArgument("dt_study must be >= 0");
  if (spec.admissible_only)
    for (const auto& [s, r] : spec.lps)
      if (!lps_admissible(s, r)) throw InvalidArgument("LPS pair (" + fmt(s) + "," + fmt(r) + ") is not admissible");
  return spec;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    require_file(spec.f_path, "forcing");
    require_file(spec.u0_path, "initial");
    require_file(spec.w_path, "drift");
    require_file(spec.traj_path, "trajectory");
    require_file(spec.basis_path, "basis");
    if (spec.command != "certify" && spec.command != "selftest") spec.config.validate();
    if (spec.command == "decay") return run_decay(spec, out, err);
    if (spec.command == "manufactured") return run_manufactured(spec, out, err);
    if (spec.command == "taylor_green") return run_taylor_green(spec, out, err);
    if (spec.command == "linearized") return run_linearized(spec, out, err);
    if (spec.command == "custom") return run_custom(spec, out, err);
    if (spec.command == "certify") return run_certify(spec, out, err);
    if (spec.command == "selftest") return run_selftest_command(spec, out, err);
    err << "unknown command '" << spec.command << "'\n";
    return exit_config;
  } catch (const SolverAbort& e) {
    err << "solver abort: " << e.what() << "\n";
    return exit_solver_abort;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }
}

}  // namespace torus
