#include "torus/trajectory.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "torus/error.hpp"
#include "torus/field_io.hpp"

namespace torus {

const SpectralLayout& FieldTrajectory::layout() const {
  if (fields.empty()) throw InvalidArgument("empty trajectory has no layout");
  return fields.front().layout();
}

VectorField FieldTrajectory::interpolate(double t) const {
  if (fields.empty()) throw InvalidArgument("cannot interpolate an empty trajectory");
  if (t <= times.front()) return fields.front();
  if (t >= times.back()) return fields.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto hi = static_cast<std::size_t>(it - times.begin());
  const auto lo = hi - 1;
  const double theta = (t - times[lo]) / (times[hi] - times[lo]);
  VectorField out = fields[lo];
  out *= (1.0 - theta);
  out.axpy(theta, fields[hi]);
  return out;
}

void FieldTrajectory::validate() const {
  if (times.size() != fields.size()) throw InvalidArgument("trajectory has mismatched time and field counts");
  if (!rhs.empty() && rhs.size() != fields.size()) throw InvalidArgument("trajectory rhs samples do not match fields");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidArgument("trajectory times must increase strictly");
  for (const auto& f : fields) require_same_layout(f.layout(), layout());
  for (const auto& f : rhs) require_same_layout(f.layout(), layout());
}

FieldTrajectory FieldTrajectory::thinned(std::size_t stride) const {
  if (stride == 0) throw InvalidArgument("stride must be positive");
  FieldTrajectory out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i % stride != 0 && i + 1 != size()) continue;
    out.times.push_back(times[i]);
    out.fields.push_back(fields[i]);
    if (has_rhs()) out.rhs.push_back(rhs[i]);
  }
  return out;
}

void write_trajectory(std::ostream& out, const FieldTrajectory& traj) {
  traj.validate();
  if (traj.empty()) throw InvalidArgument("cannot write an empty trajectory");
  const auto& layout = traj.layout();
  out << std::setprecision(17);
  out << "TRAJ 1 " << layout.ell() << ' ' << layout.cutoff() << ' ' << traj.size() << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << "STEP " << i << ' ' << traj.times[i] << '\n';
    write_field(out, traj.fields[i]);
    if (traj.has_rhs()) {
      out << "RHS " << i << '\n';
      write_field(out, traj.rhs[i]);
    }
  }
}

namespace {

VectorField to_vector(std::vector<ScalarField> comps) {
  if (comps.size() != 3) throw ParseError("trajectory samples must be vector fields");
  return VectorField(std::move(comps[0]), std::move(comps[1]), std::move(comps[2]));
}

}  // namespace

FieldTrajectory read_trajectory(std::istream& in) {
  LineReader reader(in);
  const auto header = reader.next();
  if (!header) throw ParseError("empty trajectory file");
  std::istringstream hs(*header);
  std::string tag;
  int version = 0, cutoff = 0;
  double ell = 0.0;
  std::size_t count = 0;
  if (!(hs >> tag >> version >> ell >> cutoff >> count) || tag != "TRAJ" || version != 1)
    throw ParseError("malformed TRAJ header");
  FieldTrajectory traj;
  while (const auto line = reader.next()) {
    std::istringstream ls(*line);
    std::string kind;
    std::size_t index = 0;
    ls >> kind >> index;
    if (kind == "STEP") {
      double t = 0.0;
      if (!(ls >> t) || index != traj.size()) throw ParseError("malformed STEP line " + std::to_string(reader.line_number()));
      traj.times.push_back(t);
      traj.fields.push_back(to_vector(read_field_block(reader)));
    } else if (kind == "RHS") {
      if (index + 1 != traj.size() || traj.rhs.size() != index) throw ParseError("RHS block out of order");
      traj.rhs.push_back(to_vector(read_field_block(reader)));
    } else {
      throw ParseError("unexpected line " + std::to_string(reader.line_number()) + " in trajectory");
    }
  }
  if (traj.size() != count) throw ParseError("trajectory sample count does not match header");
  traj.validate();
  if (!traj.empty() && (traj.layout().ell() != ell || traj.layout().cutoff() != cutoff))
    throw ParseError("trajectory samples disagree with header layout");
  return traj;
}

FieldTrajectory read_trajectory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_trajectory(in);
}

double trapezoid(std::span<const double> t, std::span<const double> values) {
  if (t.size() != values.size()) throw InvalidArgument("trapezoid: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) sum += 0.5 * (t[i] - t[i - 1]) * (values[i] + values[i - 1]);
  return sum;
}

std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> values) {
  if (t.size() != values.size()) throw InvalidArgument("trapezoid: size mismatch");
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (values[i] + values[i - 1]);
  return out;
}

}  // namespace torus
