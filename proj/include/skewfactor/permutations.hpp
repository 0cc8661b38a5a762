#pragma once

#include "skewfactor/core_types.hpp"

namespace skewfactor {

/// True when every pivot stays inside its window: p[i] in [0, window - i - 1].
bool pivots_valid(const PermutationVector& p);

/// Swaps rows i and i + pi of buf.
void apply_pivot_rows(MatrixView buf, index_t i, index_t pi);

/// Applies p[0], p[1], ... in order, pivot i acting on rows i.. of buf.
void apply_perm_forward(MatrixView buf, const PermutationVector& p);

/// Undoes apply_perm_forward by applying the pivots in reverse order.
void apply_perm_inverse(MatrixView buf, const PermutationVector& p);

/// Sign of the accumulated permutation matrix.
int perm_sign(const PermutationVector& p);

}  // namespace skewfactor
