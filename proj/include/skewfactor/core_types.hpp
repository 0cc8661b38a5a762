#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewfactor {

using index_t = std::ptrdiff_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct ZeroPivot : std::runtime_error {
  index_t column;
  explicit ZeroPivot(index_t col);
};

struct ZeroLeadingColumn : std::runtime_error {
  ZeroLeadingColumn();
};

struct OddDimension : std::runtime_error {
  explicit OddDimension(index_t m);
};

// ---------------------------------------------------------------------------
// Column-major views
// ---------------------------------------------------------------------------

struct MatrixView {
  double* data = nullptr;
  index_t rows = 0;
  index_t cols = 0;
  index_t ld = 0;

  double& operator()(index_t i, index_t j) const { return data[i + j * ld]; }
  double* col(index_t j) const { return data + j * ld; }
  MatrixView block(index_t i0, index_t j0, index_t nr, index_t nc) const {
    return {data + i0 + j0 * ld, nr, nc, ld};
  }
};

struct ConstMatrixView {
  const double* data = nullptr;
  index_t rows = 0;
  index_t cols = 0;
  index_t ld = 0;

  ConstMatrixView() = default;
  ConstMatrixView(const double* d, index_t r, index_t c, index_t l)
      : data(d), rows(r), cols(c), ld(l) {}
  ConstMatrixView(const MatrixView& v)
      : data(v.data), rows(v.rows), cols(v.cols), ld(v.ld) {}

  double operator()(index_t i, index_t j) const { return data[i + j * ld]; }
  const double* col(index_t j) const { return data + j * ld; }
  ConstMatrixView block(index_t i0, index_t j0, index_t nr, index_t nc) const {
    return {data + i0 + j0 * ld, nr, nc, ld};
  }
};

/// Owning dense column-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(index_t rows, index_t cols, double fill = 0.0);

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }
  double& operator()(index_t i, index_t j) { return buf_[i + j * rows_]; }
  double operator()(index_t i, index_t j) const { return buf_[i + j * rows_]; }

  MatrixView view() { return {buf_.data(), rows_, cols_, rows_}; }
  ConstMatrixView view() const { return {buf_.data(), rows_, cols_, rows_}; }
  std::vector<double>& data() { return buf_; }
  const std::vector<double>& data() const { return buf_; }

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<double> buf_;
};

// ---------------------------------------------------------------------------
// Skew-symmetric matrix: only the strictly lower triangle is stored
// authoritatively. The diagonal is zero and the upper triangle is implied.
// ---------------------------------------------------------------------------

class DenseSkewMatrix {
 public:
  DenseSkewMatrix() = default;
  explicit DenseSkewMatrix(index_t m);

  index_t order() const { return m_; }

  /// Logical entry; reflects the lower triangle with a sign flip above it.
  double get(index_t i, index_t j) const;
  /// Writes a strictly lower entry. Throws std::out_of_range unless i > j.
  void set_lower(index_t i, index_t j, double v);

  /// Raw buffer access for the mutating kernels. Entries on or above the
  /// diagonal of the buffer are never read.
  MatrixView raw() { return elems_.view(); }
  ConstMatrixView raw() const { return elems_.view(); }

  /// Full logical matrix, mostly for tests and verification.
  Matrix to_dense() const;

 private:
  void check(index_t i, index_t j) const;
  index_t m_ = 0;
  Matrix elems_;
};

/// Skew-symmetric tridiagonal T with sub[i] = T(i+1, i).
struct SkewTridiagonal {
  std::vector<double> sub;
  index_t order = 0;

  SkewTridiagonal() = default;
  explicit SkewTridiagonal(index_t m);
  SkewTridiagonal(index_t m, std::vector<double> s);
  double get(index_t i, index_t j) const;
};

/// Unit lower-triangular L; the diagonal is implicit and never stored.
class UnitLowerTriangular {
 public:
  UnitLowerTriangular() = default;
  explicit UnitLowerTriangular(index_t m);

  index_t order() const { return m_; }
  double get(index_t i, index_t j) const;
  void set(index_t i, index_t j, double v);

  /// m x m buffer; only the strictly lower part is meaningful.
  MatrixView strict() { return buf_.view(); }
  ConstMatrixView strict() const { return buf_.view(); }
  Matrix to_dense() const;

 private:
  index_t m_ = 0;
  Matrix buf_;
};

/// Interchange vector: entry i swaps rows i and i + p[i] of a window whose
/// size is `window`. For a factorization of order m the window is rows
/// 1..m-1 (row 0 carries the implicit zero pivot).
struct PermutationVector {
  std::vector<index_t> pivots;
  index_t window = 0;

  PermutationVector() = default;
  explicit PermutationVector(index_t n) : pivots(static_cast<std::size_t>(n), 0), window(n) {}
  index_t size() const { return static_cast<index_t>(pivots.size()); }
};

enum class Variant {
  unb_right,
  unb_left,
  unb_wimmer,
  blk_right,
  blk_left,
  blk_2b,
  blk_wimmer,
  piv_unb_right,
  piv_unb_left,
  piv_blk_right,
  external,
};

const char* variant_name(Variant v);
bool is_pivoted(Variant v);

enum class FirstColumnMode { canonical_e0, given };

struct Factorization {
  UnitLowerTriangular L;
  SkewTridiagonal T;
  std::optional<PermutationVector> p;
  std::uint64_t flops = 0;
  Variant variant = Variant::external;
  FirstColumnMode first_col_mode = FirstColumnMode::canonical_e0;

  index_t order() const { return T.order; }
};

enum class PanelAlgo { right_0, left };
enum class WMode { during_panel, after_panel };
enum class UpdateMode { sandwiched, wimmer_w };

struct BlockConfig {
  index_t b = 32;
  PanelAlgo panel_algo = PanelAlgo::left;
  WMode w_mode = WMode::during_panel;
  UpdateMode update_mode = UpdateMode::sandwiched;
};

/// One kernel sweep over a trailing principal window.
struct WritePass {
  index_t step = -1;
  index_t order = 0;
};

/// Per-call instrumentation threaded through drivers and kernels.
struct KernelContext {
  std::uint64_t flops = 0;
  index_t step = -1;
  std::vector<WritePass> passes;

  void add(std::uint64_t f) { flops += f; }
  void note_pass(index_t order) {
    if (order > 1) passes.push_back({step, order});
  }
};

// ---------------------------------------------------------------------------
// Generation and packed form
// ---------------------------------------------------------------------------

/// xoshiro256** stream; state expanded from the seed with splitmix64.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform on [0, 1) from the top 53 bits.
  double uniform01();

 private:
  std::uint64_t s_[4];
};

/// Strictly lower entries uniform on [-1, 1], drawn column by column.
DenseSkewMatrix random_skew(index_t m, std::uint64_t seed);

/// Packed overwrite layout: T's subdiagonal on the first subdiagonal and
/// L(i, j+1) at position (i, j) for i > j + 1. Unpivoted only.
Matrix pack_overwrite(const Factorization& f);
Factorization unpack_overwrite(const Matrix& packed);

double max_abs_strict(const UnitLowerTriangular& L);

}  // namespace skewfactor
