#include "skewfactor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "skewfactor/permutations.hpp"

namespace skewfactor {

Matrix reconstruct(const Factorization& f) {
  const index_t m = f.order();
  if (f.L.order() != m) throw std::invalid_argument("L and T orders differ");
  const Matrix L = f.L.to_dense();
  Matrix T(m, m);
  for (index_t i = 0; i + 1 < m; ++i) {
    T(i + 1, i) = f.T.sub[static_cast<std::size_t>(i)];
    T(i, i + 1) = -f.T.sub[static_cast<std::size_t>(i)];
  }
  // Extended accumulation keeps the oracle's own rounding well below the
  // factorization error when |L| is large.
  std::vector<long double> LT(static_cast<std::size_t>(m * m));
  auto lt = [&](index_t i, index_t j) -> long double& { return LT[static_cast<std::size_t>(i + j * m)]; };
  for (index_t i = 0; i < m; ++i)
    for (index_t j = 0; j < m; ++j) {
      long double acc = 0.0L;
      for (index_t k = 0; k < m; ++k) acc += static_cast<long double>(L(i, k)) * T(k, j);
      lt(i, j) = acc;
    }
  Matrix M(m, m);
  for (index_t i = 0; i < m; ++i)
    for (index_t j = 0; j < m; ++j) {
      long double acc = 0.0L;
      for (index_t k = 0; k < m; ++k) acc += lt(i, k) * L(j, k);
      M(i, j) = static_cast<double>(acc);
    }
  if (f.p && m > 1) {
    // Rows 1..m-1 carry the interchanges; undo them on rows, then on columns.
    apply_perm_inverse(M.view().block(1, 0, m - 1, m), *f.p);
    Matrix Mt(m, m);
    for (index_t i = 0; i < m; ++i)
      for (index_t j = 0; j < m; ++j) Mt(i, j) = M(j, i);
    apply_perm_inverse(Mt.view().block(1, 0, m - 1, m), *f.p);
    for (index_t i = 0; i < m; ++i)
      for (index_t j = 0; j < m; ++j) M(i, j) = Mt(j, i);
  }
  return M;
}

double residual(const DenseSkewMatrix& Xhat, const Factorization& f) {
  const index_t m = Xhat.order();
  if (m == 0) return 0.0;
  if (f.order() != m) throw std::invalid_argument("factorization order differs from matrix");
  const Matrix R = reconstruct(f);
  double num = 0.0, den = 0.0;
  for (index_t i = 0; i < m; ++i)
    for (index_t j = 0; j < m; ++j) {
      const double x = Xhat.get(i, j);
      const double d = x - R(i, j);
      num += d * d;
      den += x * x;
    }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

AuditReport audit_structure(const Factorization& f) {
  AuditReport r;
  const index_t m = f.order();
  const auto& L = f.L;
  if (L.order() != m) {
    r.unit_diag = false;
    return r;
  }
  for (index_t j = 0; j < m; ++j)
    for (index_t i = 0; i < m; ++i) {
      const double v = L.get(i, j);
      if (!std::isfinite(v) || (i == j && v != 1.0) || (i < j && v != 0.0)) r.unit_diag = false;
    }
  if (f.first_col_mode == FirstColumnMode::canonical_e0)
    for (index_t i = 1; i < m; ++i)
      if (L.get(i, 0) != 0.0) r.canonical_col0 = false;
  if (static_cast<index_t>(f.T.sub.size()) != (m > 0 ? m - 1 : 0)) r.tridiagonal = false;
  for (double t : f.T.sub)
    if (!std::isfinite(t)) r.tridiagonal = false;
  if (f.p || is_pivoted(f.variant)) {
    const double bound = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    if (max_abs_strict(L) > bound) r.bounded_l = false;
  }
  if (f.p) {
    if (f.p->window != (m > 0 ? m - 1 : 0) || f.p->size() != f.p->window || !pivots_valid(*f.p))
      r.pivots_valid = false;
  } else if (is_pivoted(f.variant)) {
    r.pivots_valid = false;
  }
  return r;
}

double det_oracle(const DenseSkewMatrix& Xhat) {
  Matrix A = Xhat.to_dense();
  const index_t n = A.rows();
  double det = 1.0;
  for (index_t k = 0; k < n; ++k) {
    index_t p = k;
    for (index_t i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
    if (A(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (index_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      det = -det;
    }
    det *= A(k, k);
    for (index_t i = k + 1; i < n; ++i) {
      const double r = A(i, k) / A(k, k);
      for (index_t j = k + 1; j < n; ++j) A(i, j) -= r * A(k, j);
    }
  }
  return det;
}

double pfaffian(const Factorization& f) {
  const index_t m = f.order();
  if (m % 2 != 0) throw OddDimension(m);
  double pf = f.p ? static_cast<double>(perm_sign(*f.p)) : 1.0;
  for (index_t i = 0; 2 * i + 1 < m; ++i) pf *= f.T.sub[static_cast<std::size_t>(2 * i)];
  return pf;
}

}  // namespace skewfactor
