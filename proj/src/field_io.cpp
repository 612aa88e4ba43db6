#include "torus/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "torus/error.hpp"

namespace torus {

namespace {

void write_block(std::ostream& out, const SpectralLayout& layout, const std::vector<const ScalarField*>& comps) {
  out << std::setprecision(17);
  out << "TORUSFIELD 1 " << layout.ell() << ' ' << layout.cutoff() << ' ' << comps.size() << '\n';
  for (const auto& k : layout.modes()) {
    if (!k.is_zero() && !k.is_pair_representative()) continue;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const Complex v = comps[c]->coeff(k);
      if (v == Complex{}) continue;
      out << k.k1 << ' ' << k.k2 << ' ' << k.k3 << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
    }
  }
}

[[noreturn]] void fail(const LineReader& reader, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << reader.line_number() << ": " << what;
  throw ParseError(msg.str());
}

}  // namespace

void write_field(std::ostream& out, const ScalarField& u) { write_block(out, u.layout(), {&u}); }

void write_field(std::ostream& out, const VectorField& u) { write_block(out, u.layout(), {&u[0], &u[1], &u[2]}); }

const std::optional<std::string>& LineReader::peek() {
  if (!has_buffer_) {
    buffered_.reset();
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        buffered_ = line;
        break;
      }
    }
    has_buffer_ = true;
  }
  return buffered_;
}

std::optional<std::string> LineReader::next() {
  auto line = peek();
  has_buffer_ = false;
  return line;
}

std::vector<ScalarField> read_field_block(LineReader& reader) {
  const auto header = reader.next();
  if (!header) fail(reader, "expected TORUSFIELD header, found end of input");
  std::istringstream hs(*header);
  std::string tag;
  int version = 0, cutoff = -1, ncomp = 0;
  double ell = 0.0;
  if (!(hs >> tag >> version >> ell >> cutoff >> ncomp) || tag != "TORUSFIELD") fail(reader, "malformed TORUSFIELD header");
  if (version != 1) fail(reader, "unsupported TORUSFIELD version");
  if (ncomp != 1 && ncomp != 3) fail(reader, "ncomponents must be 1 or 3");
  const SpectralLayout layout(ell, cutoff);
  std::vector<ScalarField> comps(static_cast<std::size_t>(ncomp), ScalarField(layout));
  while (const auto& line = reader.peek()) {
    std::istringstream ls(*line);
    int k1, k2, k3, c;
    double re, im;
    if (!(ls >> k1 >> k2 >> k3 >> c >> re >> im)) break;
    reader.next();
    const WaveVector k{k1, k2, k3};
    if (!layout.admits(k)) fail(reader, "coefficient outside cutoff");
    if (c < 0 || c >= ncomp) fail(reader, "component index out of range");
    if (!k.is_zero() && !k.is_pair_representative()) fail(reader, "only pair representatives may be stored");
    comps[static_cast<std::size_t>(c)].set(k, Complex(re, im));
  }
  return comps;
}

ScalarField read_scalar_field(std::istream& in) {
  LineReader reader(in);
  auto comps = read_field_block(reader);
  if (comps.size() != 1) throw ParseError("expected a scalar field");
  return std::move(comps[0]);
}

VectorField read_vector_field(std::istream& in) {
  LineReader reader(in);
  auto comps = read_field_block(reader);
  if (comps.size() != 3) throw ParseError("expected a vector field");
  return VectorField(std::move(comps[0]), std::move(comps[1]), std::move(comps[2]));
}

VectorField read_vector_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_vector_field(in);
}

void write_vector_field_file(const std::string& path, const VectorField& u) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_field(out, u);
}

}  // namespace torus
