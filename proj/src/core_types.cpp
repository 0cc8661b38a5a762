#include "skewfactor/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace skewfactor {

ZeroPivot::ZeroPivot(index_t col)
    : std::runtime_error("zero pivot while eliminating column " + std::to_string(col)),
      column(col) {}

ZeroLeadingColumn::ZeroLeadingColumn()
    : std::runtime_error("leading entry X(1,0) is zero") {}

OddDimension::OddDimension(index_t m)
    : std::runtime_error("pfaffian undefined for odd order " + std::to_string(m)) {}

Matrix::Matrix(index_t rows, index_t cols, double fill)
    : rows_(rows), cols_(cols), buf_(static_cast<std::size_t>(rows * cols), fill) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

DenseSkewMatrix::DenseSkewMatrix(index_t m) : m_(m), elems_(m, m) {
  if (m < 0) throw std::invalid_argument("negative order");
}

void DenseSkewMatrix::check(index_t i, index_t j) const {
  if (i < 0 || j < 0 || i >= m_ || j >= m_) throw std::out_of_range("skew matrix index");
}

double DenseSkewMatrix::get(index_t i, index_t j) const {
  check(i, j);
  if (i > j) return elems_(i, j);
  if (i == j) return 0.0;
  return -elems_(j, i);
}

void DenseSkewMatrix::set_lower(index_t i, index_t j, double v) {
  check(i, j);
  if (i <= j) throw std::out_of_range("set_lower requires i > j");
  elems_(i, j) = v;
}

Matrix DenseSkewMatrix::to_dense() const {
  Matrix d(m_, m_);
  for (index_t j = 0; j < m_; ++j)
    for (index_t i = j + 1; i < m_; ++i) {
      d(i, j) = elems_(i, j);
      d(j, i) = -elems_(i, j);
    }
  return d;
}

SkewTridiagonal::SkewTridiagonal(index_t m)
    : sub(static_cast<std::size_t>(m > 0 ? m - 1 : 0), 0.0), order(m) {}

SkewTridiagonal::SkewTridiagonal(index_t m, std::vector<double> s) : sub(std::move(s)), order(m) {
  if (static_cast<index_t>(sub.size()) != (m > 0 ? m - 1 : 0))
    throw std::invalid_argument("tridiagonal subdiagonal length mismatch");
}

double SkewTridiagonal::get(index_t i, index_t j) const {
  if (i < 0 || j < 0 || i >= order || j >= order) throw std::out_of_range("tridiagonal index");
  if (i == j + 1) return sub[static_cast<std::size_t>(j)];
  if (j == i + 1) return -sub[static_cast<std::size_t>(i)];
  return 0.0;
}

UnitLowerTriangular::UnitLowerTriangular(index_t m) : m_(m), buf_(m, m) {}

double UnitLowerTriangular::get(index_t i, index_t j) const {
  if (i < 0 || j < 0 || i >= m_ || j >= m_) throw std::out_of_range("L index");
  if (i == j) return 1.0;
  if (i < j) return 0.0;
  return buf_(i, j);
}

void UnitLowerTriangular::set(index_t i, index_t j, double v) {
  if (i < 0 || j < 0 || i >= m_ || j >= m_) throw std::out_of_range("L index");
  if (i <= j) throw std::out_of_range("L is unit lower; only i > j is writable");
  buf_(i, j) = v;
}

Matrix UnitLowerTriangular::to_dense() const {
  Matrix d(m_, m_);
  for (index_t j = 0; j < m_; ++j) {
    d(j, j) = 1.0;
    for (index_t i = j + 1; i < m_; ++i) d(i, j) = buf_(i, j);
  }
  return d;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::unb_right: return "unb-right";
    case Variant::unb_left: return "unb-left";
    case Variant::unb_wimmer: return "unb-wimmer";
    case Variant::blk_right: return "blk-right";
    case Variant::blk_left: return "blk-left";
    case Variant::blk_2b: return "blk-2b";
    case Variant::blk_wimmer: return "blk-wimmer";
    case Variant::piv_unb_right: return "piv-unb-right";
    case Variant::piv_unb_left: return "piv-unb-left";
    case Variant::piv_blk_right: return "piv-blk-right";
    case Variant::external: return "external";
  }
  return "external";
}

bool is_pivoted(Variant v) {
  return v == Variant::piv_unb_right || v == Variant::piv_unb_left || v == Variant::piv_blk_right;
}

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& w : s_) w = splitmix64(x);
}

std::uint64_t Xoshiro256ss::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256ss::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

DenseSkewMatrix random_skew(index_t m, std::uint64_t seed) {
  DenseSkewMatrix X(m);
  Xoshiro256ss rng(seed);
  auto A = X.raw();
  for (index_t j = 0; j < m; ++j)
    for (index_t i = j + 1; i < m; ++i) A(i, j) = 2.0 * rng.uniform01() - 1.0;
  return X;
}

Matrix pack_overwrite(const Factorization& f) {
  if (f.p && f.p->size() > 0) {
    for (auto v : f.p->pivots)
      if (v != 0) throw std::invalid_argument("packed form holds unpivoted factorizations only");
  }
  const index_t m = f.order();
  Matrix P(m, m);
  for (index_t j = 0; j + 1 < m; ++j) {
    P(j + 1, j) = f.T.sub[static_cast<std::size_t>(j)];
    for (index_t i = j + 2; i < m; ++i) P(i, j) = f.L.get(i, j + 1);
  }
  return P;
}

Factorization unpack_overwrite(const Matrix& packed) {
  if (packed.rows() != packed.cols()) throw std::invalid_argument("packed buffer must be square");
  const index_t m = packed.rows();
  Factorization f;
  f.L = UnitLowerTriangular(m);
  f.T = SkewTridiagonal(m);
  for (index_t j = 0; j + 1 < m; ++j) {
    f.T.sub[static_cast<std::size_t>(j)] = packed(j + 1, j);
    for (index_t i = j + 2; i < m; ++i) f.L.set(i, j + 1, packed(i, j));
  }
  return f;
}

double max_abs_strict(const UnitLowerTriangular& L) {
  double mx = 0.0;
  auto s = L.strict();
  for (index_t j = 0; j < L.order(); ++j)
    for (index_t i = j + 1; i < L.order(); ++i) mx = std::max(mx, std::abs(s(i, j)));
  return mx;
}

}  // namespace skewfactor
