#include "skewfactor/unblocked.hpp"

#include <stdexcept>

#include "skewfactor/kernels.hpp"

namespace skewfactor {

namespace {

std::uint64_t u(index_t v) { return static_cast<std::uint64_t>(v); }

std::span<const double> tail(MatrixView A, index_t col, index_t row0) {
  return {A.col(col) + row0, static_cast<std::size_t>(A.rows - row0)};
}

MatrixView window(DenseSkewMatrix& X, index_t k) {
  const index_t n = X.order() - k;
  return X.raw().block(k, k, n, n);
}

index_t panel_width(index_t m, index_t k0, index_t ncols) {
  const index_t avail = m > 0 ? m - 1 - k0 : 0;
  if (ncols < 0 || ncols > avail) return avail;
  return ncols;
}

void set_first_column(UnitLowerTriangular& L, std::span<const double> l21) {
  for (index_t i = 1; i < L.order(); ++i) L.set(i, 0, l21[static_cast<std::size_t>(i - 1)]);
}

void check_first_col(const DenseSkewMatrix& X, const std::vector<double>& l21) {
  const index_t m = X.order();
  if (static_cast<index_t>(l21.size()) != (m > 0 ? m - 1 : 0))
    throw std::invalid_argument("first column length must be m-1");
}

}  // namespace

FactorState::FactorState(const DenseSkewMatrix& A, KernelContext& c)
    : X(A),
      L(A.order()),
      sub(static_cast<std::size_t>(A.order() > 0 ? A.order() - 1 : 0), 0.0),
      piv(static_cast<std::size_t>(A.order() > 0 ? A.order() - 1 : 0), 0),
      ctx(&c) {}

DenseSkewMatrix preprocess_first_column(const DenseSkewMatrix& X, std::span<const double> l21) {
  const index_t m = X.order();
  if (m == 0) {
    if (!l21.empty()) throw std::invalid_argument("first column length mismatch");
    return X;
  }
  if (static_cast<index_t>(l21.size()) != m - 1)
    throw std::invalid_argument("first column length mismatch");
  DenseSkewMatrix Y = X;
  KernelContext ctx;
  skr2_lower(window(Y, 1), l21, tail(Y.raw(), 0, 1), 1.0, ctx);
  return Y;
}

void eliminate_column(FactorState& s, index_t c, bool allow_zero_column) {
  auto X = s.X.raw();
  auto L = s.L.strict();
  const index_t m = s.order();
  const double tau = X(c + 1, c);
  s.sub[static_cast<std::size_t>(c)] = tau;
  if (tau == 0.0) {
    if (!allow_zero_column) throw ZeroPivot(c);
    for (index_t i = c + 2; i < m; ++i) {
      L(i, c + 1) = 0.0;
      X(i, c) = 0.0;
    }
    return;
  }
  for (index_t i = c + 2; i < m; ++i) {
    L(i, c + 1) = X(i, c) / tau;
    X(i, c) = 0.0;
  }
  s.ctx->add(u(m - c - 2 > 0 ? m - c - 2 : 0));
}

void right_panel(FactorState& s, index_t k0, index_t ncols, bool first_given,
                 bool restrict_to_panel) {
  const index_t m = s.order();
  const index_t end = k0 + ncols;
  auto& ctx = *s.ctx;
  if (first_given && k0 + 1 < m) {
    auto W = window(s.X, k0 + 1);
    auto l = tail(s.L.strict(), k0, k0 + 1);
    auto x = tail(s.X.raw(), k0, k0 + 1);
    if (restrict_to_panel)
      skr2_lower_cols(W, l, x, 1.0, end - (k0 + 1), ctx);
    else
      skr2_lower(W, l, x, 1.0, ctx);
  }
  for (index_t c = k0; c < end; ++c) {
    eliminate_column(s, c);
    if (c + 2 >= m) continue;
    auto W = window(s.X, c + 2);
    auto l = tail(s.L.strict(), c + 1, c + 2);
    auto x = tail(s.X.raw(), c + 1, c + 2);
    if (restrict_to_panel)
      skr2_lower_cols(W, l, x, 1.0, end - (c + 2), ctx);
    else
      skr2_lower(W, l, x, 1.0, ctx);
  }
}

void left_history(FactorState& s, index_t k0, index_t c, bool first_given) {
  const index_t t = c - k0;
  if (t == 0) return;
  const index_t m = s.order();
  auto X = s.X.raw();
  auto L = s.L.strict();
  std::vector<double> l10(static_cast<std::size_t>(t));
  for (index_t q = 0; q < t; ++q) l10[static_cast<std::size_t>(q)] = L(c, k0 + q);
  if (!first_given) l10[0] = 0.0;
  BorderedWindow win;
  win.order = t;
  win.sub = std::span<const double>(s.sub.data() + k0, static_cast<std::size_t>(t - 1));
  win.trail = s.sub[static_cast<std::size_t>(c - 1)];
  const auto h = aasen_column(win, l10, *s.ctx);
  double* x = X.col(c);
  for (index_t q = first_given ? 0 : 1; q <= t; ++q) {
    const double a = h[static_cast<std::size_t>(q)];
    const double* lc = L.col(k0 + q);
    for (index_t i = c + 1; i < m; ++i) x[i] -= lc[i] * a;
    s.ctx->add(2 * u(m - c - 1));
  }
}

void left_panel(FactorState& s, index_t k0, index_t ncols, bool first_given) {
  for (index_t c = k0; c < k0 + ncols; ++c) {
    left_history(s, k0, c, first_given);
    eliminate_column(s, c);
  }
}

void wimmer_panel(FactorState& s, index_t k0, index_t ncols, bool restrict_to_panel,
                  WimmerStash* stash) {
  const index_t m = s.order();
  const index_t end = k0 + ncols;
  auto X = s.X.raw();
  auto L = s.L.strict();
  auto& ctx = *s.ctx;
  if (stash) {
    stash->row0 = end;
    stash->y.clear();
    stash->w.clear();
    stash->fixup_pending = false;
  }
  index_t c = k0;
  for (; c + 1 < end; c += 2) {
    eliminate_column(s, c);
    eliminate_column(s, c + 1);
    const index_t r = c + 3;
    if (r >= m) continue;
    const bool col_in_panel = !restrict_to_panel || c + 2 < end;
    if (stash && restrict_to_panel && col_in_panel) {
      stash->y.emplace_back(L.col(c + 2) + end, L.col(c + 2) + m);
      stash->w.emplace_back(X.col(c + 2) + end, X.col(c + 2) + m);
    }
    auto W = window(s.X, r);
    auto l43 = tail(L, c + 2, r);
    auto x43 = tail(X, c + 2, r);
    if (restrict_to_panel)
      skr2_lower_cols(W, l43, x43, 1.0, end - r, ctx);
    else
      skr2_lower(W, l43, x43, 1.0, ctx);
    if (!col_in_panel) {
      if (stash) stash->fixup_pending = true;
      continue;
    }
    // x43 += tau32 l42 - tau32 lambda32 l43
    const double tau32 = s.sub[static_cast<std::size_t>(c + 1)];
    const double alpha = tau32 * L(c + 2, c + 1);
    double* x = X.col(c + 2);
    const double* l42 = L.col(c + 1);
    const double* l43c = L.col(c + 2);
    for (index_t i = r; i < m; ++i) x[i] += tau32 * l42[i] - alpha * l43c[i];
    ctx.add(1 + 4 * u(m - r));
  }
  if (c < end) {
    eliminate_column(s, c);
    if (c + 2 < m) {
      auto W = window(s.X, c + 2);
      auto l = tail(L, c + 1, c + 2);
      auto x = tail(X, c + 1, c + 2);
      if (restrict_to_panel)
        skr2_lower_cols(W, l, x, 1.0, end - (c + 2), ctx);
      else
        skr2_lower(W, l, x, 1.0, ctx);
    }
  }
}

Factorization finish_state(FactorState& s, Variant v, FirstColumnMode mode, bool pivoted) {
  Factorization f;
  const index_t m = s.order();
  f.L = std::move(s.L);
  f.T = SkewTridiagonal(m, std::move(s.sub));
  if (pivoted) {
    PermutationVector p(m > 0 ? m - 1 : 0);
    p.pivots = std::move(s.piv);
    f.p = std::move(p);
  }
  f.flops = s.ctx->flops;
  f.variant = v;
  f.first_col_mode = mode;
  return f;
}

Factorization ltlt_unb_right(const DenseSkewMatrix& X, const PanelScope& scope, KernelContext* ctx) {
  KernelContext local;
  KernelContext& c = ctx ? *ctx : local;
  const index_t m = X.order();
  const index_t nc = panel_width(m, 0, scope.ncols);
  const bool restrict_to_panel = !scope.update_beyond_panel;
  if (scope.first_col) {
    check_first_col(X, *scope.first_col);
    FactorState s(X, c);
    if (m > 0) set_first_column(s.L, *scope.first_col);
    right_panel(s, 0, nc, true, restrict_to_panel);
    return finish_state(s, Variant::unb_right, FirstColumnMode::given, false);
  }
  FactorState s(X, c);
  right_panel(s, 0, nc, false, restrict_to_panel);
  return finish_state(s, Variant::unb_right, FirstColumnMode::canonical_e0, false);
}

Factorization ltlt_unb_left(const DenseSkewMatrix& X, const PanelScope& scope, KernelContext* ctx) {
  KernelContext local;
  KernelContext& c = ctx ? *ctx : local;
  const index_t m = X.order();
  const index_t nc = panel_width(m, 0, scope.ncols);
  FactorState s(X, c);
  const bool given = scope.first_col.has_value();
  if (given) {
    check_first_col(X, *scope.first_col);
    if (m > 0) set_first_column(s.L, *scope.first_col);
  }
  left_panel(s, 0, nc, given);
  return finish_state(s, Variant::unb_left,
                      given ? FirstColumnMode::given : FirstColumnMode::canonical_e0, false);
}

Factorization ltlt_unb_wimmer(const DenseSkewMatrix& X, KernelContext* ctx) {
  KernelContext local;
  KernelContext& c = ctx ? *ctx : local;
  FactorState s(X, c);
  wimmer_panel(s, 0, panel_width(X.order(), 0, -1), false, nullptr);
  return finish_state(s, Variant::unb_wimmer, FirstColumnMode::canonical_e0, false);
}

}  // namespace skewfactor
