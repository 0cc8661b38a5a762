#include "skewfactor/permutations.hpp"

#include <stdexcept>
#include <utility>

namespace skewfactor {

bool pivots_valid(const PermutationVector& p) {
  if (p.size() > p.window) return false;
  for (index_t i = 0; i < p.size(); ++i) {
    const index_t pi = p.pivots[static_cast<std::size_t>(i)];
    if (pi < 0 || pi > p.window - i - 1) return false;
  }
  return true;
}

void apply_pivot_rows(MatrixView buf, index_t i, index_t pi) {
  if (i < 0 || pi < 0 || i + pi >= buf.rows) throw std::out_of_range("pivot outside window");
  if (pi == 0) return;
  for (index_t j = 0; j < buf.cols; ++j) std::swap(buf(i, j), buf(i + pi, j));
}

namespace {
void check_window(MatrixView buf, const PermutationVector& p) {
  if (!pivots_valid(p) || p.window != buf.rows)
    throw std::invalid_argument("permutation vector does not fit buffer");
}
}  // namespace

void apply_perm_forward(MatrixView buf, const PermutationVector& p) {
  check_window(buf, p);
  for (index_t i = 0; i < p.size(); ++i) apply_pivot_rows(buf, i, p.pivots[static_cast<std::size_t>(i)]);
}

void apply_perm_inverse(MatrixView buf, const PermutationVector& p) {
  check_window(buf, p);
  for (index_t i = p.size() - 1; i >= 0; --i)
    apply_pivot_rows(buf, i, p.pivots[static_cast<std::size_t>(i)]);
}

int perm_sign(const PermutationVector& p) {
  int s = 1;
  for (auto pi : p.pivots)
    if (pi != 0) s = -s;
  return s;
}

}  // namespace skewfactor
