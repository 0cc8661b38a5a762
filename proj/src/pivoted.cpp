#include "skewfactor/pivoted.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "skewfactor/blocked.hpp"
#include "skewfactor/kernels.hpp"

namespace skewfactor {

namespace {

void swap_l_rows(UnitLowerTriangular& L, index_t a, index_t b, index_t ncols) {
  auto S = L.strict();
  for (index_t j = 0; j < ncols; ++j) std::swap(S(a, j), S(b, j));
}

// Pivot for column c: choose, swap X symmetrically and L(:, 0..c).
void pivot_column(FactorState& s, index_t c) {
  const index_t m = s.order();
  auto X = s.X.raw();
  const index_t pi = iamax(std::span<const double>(X.col(c) + c + 1, static_cast<std::size_t>(m - c - 1)));
  s.piv[static_cast<std::size_t>(c)] = pi;
  if (pi == 0) return;
  apply_pivot_symmetric(s.X, c + 1, pi);
  swap_l_rows(s.L, c + 1, c + 1 + pi, c + 1);
}

}  // namespace

index_t iamax(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("iamax of empty column");
  index_t best = 0;
  double mx = std::abs(v[0]);
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > mx) {
      mx = std::abs(v[i]);
      best = static_cast<index_t>(i);
    }
  }
  return best;
}

void apply_pivot_symmetric(DenseSkewMatrix& X, index_t i, index_t pi) {
  const index_t m = X.order();
  if (i < 0 || pi < 0 || i + pi >= m) throw std::out_of_range("symmetric pivot outside window");
  if (pi == 0) return;
  auto A = X.raw();
  const index_t a = i;
  const index_t b = i + pi;
  for (index_t j = 0; j < a; ++j) std::swap(A(a, j), A(b, j));
  for (index_t j = a + 1; j < b; ++j) {
    const double t = A(j, a);
    A(j, a) = -A(b, j);
    A(b, j) = -t;
  }
  for (index_t r = b + 1; r < m; ++r) std::swap(A(r, a), A(r, b));
  A(b, a) = -A(b, a);
}

void left_panel_pivoted(FactorState& s, index_t k0, index_t ncols, bool first_given) {
  for (index_t c = k0; c < k0 + ncols; ++c) {
    left_history(s, k0, c, first_given);
    pivot_column(s, c);
    eliminate_column(s, c, true);
  }
}

Factorization ltlt_piv_unb_right(const DenseSkewMatrix& X, KernelContext* ctx) {
  KernelContext local;
  KernelContext& kc = ctx ? *ctx : local;
  FactorState s(X, kc);
  const index_t m = X.order();
  for (index_t c = 0; c + 1 < m; ++c) {
    pivot_column(s, c);
    eliminate_column(s, c, true);
    if (c + 2 >= m) continue;
    const index_t n = m - c - 2;
    auto L = s.L.strict();
    auto A = s.X.raw();
    std::span<const double> l(L.col(c + 1) + c + 2, static_cast<std::size_t>(n));
    std::span<const double> x(A.col(c + 1) + c + 2, static_cast<std::size_t>(n));
    skr2_lower(A.block(c + 2, c + 2, n, n), l, x, 1.0, kc);
  }
  return finish_state(s, Variant::piv_unb_right, FirstColumnMode::canonical_e0, true);
}

Factorization ltlt_piv_unb_left(const DenseSkewMatrix& X, const PanelScope& scope, KernelContext* ctx) {
  KernelContext local;
  KernelContext& kc = ctx ? *ctx : local;
  FactorState s(X, kc);
  const index_t m = X.order();
  const index_t avail = m > 0 ? m - 1 : 0;
  const index_t nc = scope.ncols < 0 || scope.ncols > avail ? avail : scope.ncols;
  const bool given = scope.first_col.has_value();
  if (given) {
    if (static_cast<index_t>(scope.first_col->size()) != avail)
      throw std::invalid_argument("first column length must be m-1");
    for (index_t i = 1; i < m; ++i) s.L.set(i, 0, (*scope.first_col)[static_cast<std::size_t>(i - 1)]);
  }
  left_panel_pivoted(s, 0, nc, given);
  return finish_state(s, Variant::piv_unb_left,
                      given ? FirstColumnMode::given : FirstColumnMode::canonical_e0, true);
}

Factorization ltlt_piv_blk_right(const DenseSkewMatrix& X, const BlockConfig& cfg, KernelContext* ctx) {
  if (cfg.b < 1) throw std::invalid_argument("block size must be at least 1");
  KernelContext local;
  KernelContext& kc = ctx ? *ctx : local;
  FactorState s(X, kc);
  const index_t m = X.order();
  index_t step = 0;
  for (index_t k0 = 0; k0 < m - 1; ++step) {
    kc.step = step;
    const index_t nb = std::min(cfg.b, m - 1 - k0);
    const index_t j = k0 + nb;
    left_panel_pivoted(s, k0, nb, false);
    if (cfg.update_mode == UpdateMode::wimmer_w)
      trailing_wimmer_after(s, k0, j);
    else
      trailing_sandwiched(s, k0, j);
    k0 = j;
  }
  return finish_state(s, Variant::piv_blk_right, FirstColumnMode::canonical_e0, true);
}

}  // namespace skewfactor
