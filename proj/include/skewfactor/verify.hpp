#pragma once

#include "skewfactor/core_types.hpp"

namespace skewfactor {

struct AuditReport {
  bool unit_diag = true;
  bool canonical_col0 = true;  // only judged in canonical_e0 mode
  bool tridiagonal = true;
  bool bounded_l = true;       // only judged for pivoted factorizations
  bool pivots_valid = true;

  bool ok() const { return unit_diag && canonical_col0 && tridiagonal && bounded_l && pivots_valid; }
};

/// Dense P^-1 L T L^T P^-T by a naive triple product.
Matrix reconstruct(const Factorization& f);

/// ||Xhat - reconstruct(f)||_F / max(||Xhat||_F, 1e-300) over the full matrix.
double residual(const DenseSkewMatrix& Xhat, const Factorization& f);

AuditReport audit_structure(const Factorization& f);

/// Determinant by dense LU with partial pivoting.
double det_oracle(const DenseSkewMatrix& Xhat);

/// perm_sign(p) * prod T.sub[2i]. The sign convention takes the 2 x 2 block
/// with lower entry a to have Pfaffian a. Interchanges contribute det(P)
/// through pf(P X P^T) = det(P) pf(X).
double pfaffian(const Factorization& f);

}  // namespace skewfactor
