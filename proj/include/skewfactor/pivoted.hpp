#pragma once

#include <span>

#include "skewfactor/core_types.hpp"
#include "skewfactor/unblocked.hpp"

namespace skewfactor {

/// Index of the entry of largest magnitude; ties go to the lowest index.
index_t iamax(std::span<const double> v);

/// Swaps rows and columns i and i+pi of X, keeping the lower triangle authoritative.
void apply_pivot_symmetric(DenseSkewMatrix& X, index_t i, index_t pi);

/// Left-looking panel with symmetric pivoting. Each interchange is applied to
/// the whole of X and to L(:, 0..c), so the rest of the matrix stays
/// consistently pivoted. An all-zero pivot column yields tau = 0, l = 0.
void left_panel_pivoted(FactorState& s, index_t k0, index_t ncols, bool first_given);

Factorization ltlt_piv_unb_right(const DenseSkewMatrix& X, KernelContext* ctx = nullptr);
Factorization ltlt_piv_unb_left(const DenseSkewMatrix& X, const PanelScope& scope = {},
                                KernelContext* ctx = nullptr);
/// Panels are always pivoted left-looking; cfg.panel_algo is ignored.
Factorization ltlt_piv_blk_right(const DenseSkewMatrix& X, const BlockConfig& cfg,
                                 KernelContext* ctx = nullptr);

}  // namespace skewfactor
