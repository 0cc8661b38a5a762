#pragma once

#include <optional>
#include <span>
#include <vector>

#include "skewfactor/core_types.hpp"

namespace skewfactor {

/// A window of a skew tridiagonal: `order` indices coupled by `sub`, plus
/// optional couplings to one index before (lead) and one after (trail).
struct BorderedWindow {
  index_t order = 0;
  std::span<const double> sub;
  std::optional<double> lead;
  std::optional<double> trail;

  /// Order including border indices. A window of order 0 has no borders.
  index_t total_order() const;
  /// Subdiagonal of the bordered window, length total_order() - 1.
  std::vector<double> couplings() const;
};

/// Strictly lower half S of a skew tridiagonal window, T = S - S^T.
/// Row 2i+1 holds S(2i+1, 2i) = t[2i] and S(2i+1, 2i+2) = -t[2i+1].
struct SSplit {
  index_t order = 0;
  std::vector<double> coupling;

  double entry(index_t i, index_t j) const;
};

/// Compressed W = L S: only the even (structurally nonzero) columns are
/// kept. Y holds the matching columns of L, so W Y^T - Y W^T = L (S - S^T) L^T.
struct WorkPanel {
  Matrix W;
  Matrix Y;
  std::vector<index_t> logical_cols;
  index_t expanded_cols = 0;

  index_t width() const { return W.cols(); }
  Matrix expanded_w() const;
};

enum class GaussDirection { forward, inverse };

/// X += sign (l x^T - x l^T) on the strictly lower part of an n x n window.
void skr2_lower(MatrixView X, std::span<const double> l, std::span<const double> x, double sign,
                KernelContext& ctx);

/// As skr2_lower, but only columns j < col_end are written. Used inside panels.
void skr2_lower_cols(MatrixView X, std::span<const double> l, std::span<const double> x,
                     double sign, index_t col_end, KernelContext& ctx);

/// X += sign (W Y^T - Y W^T) on the strictly lower part.
void skr2k_lower(MatrixView X, ConstMatrixView W, ConstMatrixView Y, double sign,
                 KernelContext& ctx);

SSplit split_s(const BorderedWindow& Twin);

WorkPanel build_w(ConstMatrixView Lpanel, const SSplit& S, KernelContext& ctx);

/// X -= Lpanel Twin Lpanel^T, evaluated as build_w + skr2k_lower.
void sandwiched_update(MatrixView X, ConstMatrixView Lpanel, const BorderedWindow& Twin,
                       KernelContext& ctx);

/// X := G X G^T with G = [1 0; -l I] (forward) or [1 0; l I] (inverse).
void gauss_apply_two_sided(MatrixView X, std::span<const double> l, GaussDirection dir,
                           KernelContext& ctx);

/// h = [T00 border; border^T 0] (l10; last) using only the band; length
/// k + 1. `last` is 1 for a column's own step; the blocked left-looking
/// history passes the L entry on the border index instead.
std::vector<double> aasen_column(const BorderedWindow& T00win, std::span<const double> l10,
                                 KernelContext& ctx, double last = 1.0);

}  // namespace skewfactor
