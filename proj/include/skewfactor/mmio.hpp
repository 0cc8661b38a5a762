#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "skewfactor/core_types.hpp"

namespace skewfactor {

/// Malformed file, unsupported header, or an I/O failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Skew-symmetric coordinate files: 1-based, strictly lower entries only.
DenseSkewMatrix read_matrix_market(const std::string& path);
DenseSkewMatrix read_matrix_market(std::istream& in);
void write_matrix_market(const DenseSkewMatrix& X, const std::string& path);
void write_matrix_market(const DenseSkewMatrix& X, std::ostream& out);

// T as a skew-symmetric file holding only the subdiagonal.
SkewTridiagonal read_tridiagonal(const std::string& path);
void write_tridiagonal(const SkewTridiagonal& T, const std::string& path);

// L as a general coordinate file with the unit diagonal omitted.
UnitLowerTriangular read_unit_lower(const std::string& path);
void write_unit_lower(const UnitLowerTriangular& L, const std::string& path);

// Pivots as a whitespace-separated list of 0-based integers.
PermutationVector read_pivots(const std::string& path, index_t window);
void write_pivots(const PermutationVector& p, const std::string& path);

}  // namespace skewfactor
