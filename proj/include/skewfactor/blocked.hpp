#pragma once

#include "skewfactor/core_types.hpp"
#include "skewfactor/kernels.hpp"
#include "skewfactor/unblocked.hpp"

namespace skewfactor {

Factorization ltlt_blk_right(const DenseSkewMatrix& X, const BlockConfig& cfg,
                             KernelContext* ctx = nullptr);
Factorization ltlt_blk_left(const DenseSkewMatrix& X, const BlockConfig& cfg,
                            KernelContext* ctx = nullptr);
Factorization ltlt_blk_right_2b(const DenseSkewMatrix& X, const BlockConfig& cfg,
                                KernelContext* ctx = nullptr);
Factorization ltlt_blk_wimmer(const DenseSkewMatrix& X, const BlockConfig& cfg,
                              KernelContext* ctx = nullptr);

// Trailing updates after a panel that eliminated columns k0..j-1. Each
// leaves X(j:, j:) in the state of an unfactored problem with L(:, j) = e0.

/// Copy of L(row0:, col0 : col0+ncols) including the unit diagonal.
Matrix extract_panel(const UnitLowerTriangular& L, index_t row0, index_t col0, index_t ncols);

/// Sandwiched update of X(j:, j:) followed by the separate rank-2 fix-up.
void trailing_sandwiched(FactorState& s, index_t k0, index_t j);

/// W = L S for the panel, x43 fix-up, w43 += x43, one skr2k on X(j+1:, j+1:).
/// Returns the compressed width of W.
index_t trailing_wimmer_after(FactorState& s, index_t k0, index_t j);

/// Flushes the pairs deferred by a panel-restricted Wimmer run.
void trailing_wimmer_during(FactorState& s, index_t j, const WimmerStash& stash);

}  // namespace skewfactor
