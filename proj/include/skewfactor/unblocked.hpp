#pragma once

#include <optional>
#include <vector>

#include "skewfactor/core_types.hpp"

namespace skewfactor {

/// Which columns a driver factors, and whether it may touch the rest.
struct PanelScope {
  index_t ncols = -1;  // -1: all m-1 columns
  bool update_beyond_panel = true;
  std::optional<std::vector<double>> first_col;  // nullopt: L column 0 is e0
};

/// Working storage shared by the drivers. X is reduced in place: after
/// column c is eliminated, X(c+2:, c) is zero and sub[c] holds the pivot.
struct FactorState {
  DenseSkewMatrix X;
  UnitLowerTriangular L;
  std::vector<double> sub;
  std::vector<index_t> piv;
  KernelContext* ctx = nullptr;

  FactorState(const DenseSkewMatrix& A, KernelContext& c);
  index_t order() const { return X.order(); }
};

/// Stash of the deferred rank-2 pairs from a panel-restricted Wimmer run.
struct WimmerStash {
  index_t row0 = 0;               // first trailing row held in y and w
  std::vector<std::vector<double>> y;  // L columns, rows row0..m-1
  std::vector<std::vector<double>> w;  // pre-fix-up X columns, rows row0..m-1
  bool fixup_pending = false;     // panel ended on a pair: column row0 owes its fix-up
};

/// Applies the Gauss transform of a given first column to the trailing
/// (m-1)-window: X22 += l21 x21^T - x21 l21^T.
DenseSkewMatrix preprocess_first_column(const DenseSkewMatrix& X, std::span<const double> l21);

// Panel building blocks. Columns k0 .. k0+ncols-1 are eliminated. With
// first_given the column L(:, k0) is taken from state; otherwise it is e0
// locally. With restrict_to_panel nothing outside columns < k0+ncols is written.

void right_panel(FactorState& s, index_t k0, index_t ncols, bool first_given,
                 bool restrict_to_panel);

/// History update X(c+1:, c) -= L(c+1:, k0..c) T(k0..c) L(c, k0..c)^T for
/// one column c of a left-looking panel rooted at k0.
void left_history(FactorState& s, index_t k0, index_t c, bool first_given);

/// Divides out the pivot of column c: sub[c], L(c+2:, c+1), zeroing X(c+2:, c).
/// Throws ZeroPivot on an exact zero unless allow_zero_column is set.
void eliminate_column(FactorState& s, index_t c, bool allow_zero_column = false);

void left_panel(FactorState& s, index_t k0, index_t ncols, bool first_given);

void wimmer_panel(FactorState& s, index_t k0, index_t ncols, bool restrict_to_panel,
                  WimmerStash* stash);

Factorization finish_state(FactorState& s, Variant v, FirstColumnMode mode, bool pivoted);

Factorization ltlt_unb_right(const DenseSkewMatrix& X, const PanelScope& scope = {},
                             KernelContext* ctx = nullptr);
Factorization ltlt_unb_left(const DenseSkewMatrix& X, const PanelScope& scope = {},
                            KernelContext* ctx = nullptr);
Factorization ltlt_unb_wimmer(const DenseSkewMatrix& X, KernelContext* ctx = nullptr);

}  // namespace skewfactor
