#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "torus/field.hpp"

namespace torus {

// Text format:
//   TORUSFIELD 1 <ell> <cutoff> <ncomponents>
//   k1 k2 k3 comp re im        (one line per nonzero coefficient, comp 0-based)
// Only the representative of each pair {k,-k} (first nonzero component positive) and k = 0
// are written; the partner follows from Hermitian symmetry. A block ends at the first line
// that is not a coefficient line, so blocks can be embedded in larger files.

void write_field(std::ostream& out, const ScalarField& u);
void write_field(std::ostream& out, const VectorField& u);

/// Line reader with one line of lookahead, shared by the container formats.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  /// Next non-blank line without consuming it.
  const std::optional<std::string>& peek();
  std::optional<std::string> next();
  int line_number() const { return line_number_; }

 private:
  std::istream& in_;
  std::optional<std::string> buffered_;
  bool has_buffer_ = false;
  int line_number_ = 0;
};

/// Reads one TORUSFIELD block; returns its components (1 or 3).
std::vector<ScalarField> read_field_block(LineReader& reader);

ScalarField read_scalar_field(std::istream& in);
VectorField read_vector_field(std::istream& in);
VectorField read_vector_field_file(const std::string& path);
void write_vector_field_file(const std::string& path, const VectorField& u);

}  // namespace torus
