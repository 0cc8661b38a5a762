#include "skewfactor/blocked.hpp"

#include <algorithm>
#include <stdexcept>

namespace skewfactor {

namespace {

std::uint64_t u(index_t v) { return static_cast<std::uint64_t>(v); }

void check_cfg(const BlockConfig& cfg) {
  if (cfg.b < 1) throw std::invalid_argument("block size must be at least 1");
}

MatrixView window(DenseSkewMatrix& X, index_t k) {
  const index_t n = X.order() - k;
  return X.raw().block(k, k, n, n);
}

// Tridiagonal window over indices first..last of the global T.
BorderedWindow t_window(const FactorState& s, index_t first, index_t last) {
  BorderedWindow w;
  const index_t n = last - first + 1;
  if (n <= 1) {
    w.order = n;
    return w;
  }
  w.order = n - 1;
  w.sub = std::span<const double>(s.sub.data() + first, static_cast<std::size_t>(n - 2));
  w.trail = s.sub[static_cast<std::size_t>(last - 1)];
  return w;
}

void factor_panel(FactorState& s, PanelAlgo algo, index_t k0, index_t nb, bool first_given) {
  if (algo == PanelAlgo::left)
    left_panel(s, k0, nb, first_given);
  else
    right_panel(s, k0, nb, first_given, true);
}

}  // namespace

Matrix extract_panel(const UnitLowerTriangular& L, index_t row0, index_t col0, index_t ncols) {
  const index_t m = L.order();
  Matrix P(m - row0, ncols);
  auto S = L.strict();
  for (index_t q = 0; q < ncols; ++q) {
    const index_t j = col0 + q;
    for (index_t i = std::max(row0, j); i < m; ++i) P(i - row0, q) = i == j ? 1.0 : S(i, j);
  }
  return P;
}

void trailing_sandwiched(FactorState& s, index_t k0, index_t j) {
  const index_t m = s.order();
  const index_t nb = j - k0;
  auto& ctx = *s.ctx;
  if (j >= m) return;
  if (nb >= 2) {
    const Matrix Lp = extract_panel(s.L, j, k0 + 1, nb);
    sandwiched_update(window(s.X, j), Lp.view(), t_window(s, k0 + 1, j), ctx);
  }
  if (j + 1 < m) {
    auto L = s.L.strict();
    auto X = s.X.raw();
    const auto n = static_cast<std::size_t>(m - j - 1);
    std::span<const double> l43(L.col(j) + j + 1, n);
    std::span<const double> x43(X.col(j) + j + 1, n);
    skr2_lower(window(s.X, j + 1), l43, x43, 1.0, ctx);
  }
}

index_t trailing_wimmer_after(FactorState& s, index_t k0, index_t j) {
  const index_t m = s.order();
  const index_t nb = j - k0;
  auto& ctx = *s.ctx;
  if (j + 1 >= m) return 0;
  const index_t n = m - j;
  const Matrix Lp = extract_panel(s.L, j, k0 + 1, nb);
  WorkPanel P = build_w(Lp.view(), split_s(t_window(s, k0 + 1, j)), ctx);
  const index_t c = P.width();

  // x43 -= W(1:, :) Y(0, :)^T - Y(1:, :) W(0, :)^T
  double* x43 = s.X.raw().col(j) + j;
  for (index_t q = 0; q < c; ++q) {
    const double y0 = P.Y(0, q);
    const double w0 = P.W(0, q);
    for (index_t i = 1; i < n; ++i) x43[i] -= P.W(i, q) * y0 - P.Y(i, q) * w0;
  }
  ctx.add(4 * u(c) * u(n - 1));

  // w43 += x43 on the last panel column of W.
  const index_t last = nb - 1;
  Matrix W, Y;
  if (last % 2 == 0) {
    W = std::move(P.W);
    Y = std::move(P.Y);
    const index_t q = last / 2;
    for (index_t i = 1; i < n; ++i) W(i, q) += x43[i];
    ctx.add(u(n - 1));
  } else {
    W = Matrix(n, c + 1);
    Y = Matrix(n, c + 1);
    std::copy(P.W.data().begin(), P.W.data().end(), W.data().begin());
    std::copy(P.Y.data().begin(), P.Y.data().end(), Y.data().begin());
    for (index_t i = 1; i < n; ++i) {
      W(i, c) = x43[i];
      Y(i, c) = Lp(i, last);
    }
  }
  const index_t width = W.cols();
  skr2k_lower(window(s.X, j + 1), W.view().block(1, 0, n - 1, width),
              Y.view().block(1, 0, n - 1, width), -1.0, ctx);
  return width;
}

void trailing_wimmer_during(FactorState& s, index_t j, const WimmerStash& stash) {
  const index_t m = s.order();
  auto& ctx = *s.ctx;
  const index_t n = m - j - 1;
  if (n <= 0) return;
  auto L = s.L.strict();
  auto X = s.X.raw();
  const index_t np = static_cast<index_t>(stash.y.size());

  // Column j as the unblocked sweep would have left it before its own fix-up.
  std::vector<double> xpre(X.col(j) + j + 1, X.col(j) + m);
  for (index_t p = 0; p < np; ++p) {
    const auto& y = stash.y[static_cast<std::size_t>(p)];
    const auto& w = stash.w[static_cast<std::size_t>(p)];
    const double wj = w[0];
    const double yj = y[0];
    for (index_t i = 0; i < n; ++i)
      xpre[static_cast<std::size_t>(i)] +=
          y[static_cast<std::size_t>(i + 1)] * wj - w[static_cast<std::size_t>(i + 1)] * yj;
  }
  ctx.add(4 * u(np) * u(n));

  Matrix Wm(n, np + 1), Ym(n, np + 1);
  for (index_t p = 0; p < np; ++p)
    for (index_t i = 0; i < n; ++i) {
      Wm(i, p) = stash.w[static_cast<std::size_t>(p)][static_cast<std::size_t>(i + 1)];
      Ym(i, p) = stash.y[static_cast<std::size_t>(p)][static_cast<std::size_t>(i + 1)];
    }
  for (index_t i = 0; i < n; ++i) {
    Wm(i, np) = xpre[static_cast<std::size_t>(i)];
    Ym(i, np) = L(j + 1 + i, j);
  }

  double* xj = X.col(j) + j + 1;
  for (index_t i = 0; i < n; ++i) xj[i] = xpre[static_cast<std::size_t>(i)];
  if (stash.fixup_pending) {
    const double tau32 = s.sub[static_cast<std::size_t>(j - 1)];
    const double alpha = tau32 * L(j, j - 1);
    const double* l42 = L.col(j - 1) + j + 1;
    const double* l43 = L.col(j) + j + 1;
    for (index_t i = 0; i < n; ++i) xj[i] += tau32 * l42[i] - alpha * l43[i];
    ctx.add(1 + 4 * u(n));
  }
  skr2k_lower(window(s.X, j + 1), Ym.view(), Wm.view(), 1.0, ctx);
}

Factorization ltlt_blk_right(const DenseSkewMatrix& X, const BlockConfig& cfg, KernelContext* ctx) {
  check_cfg(cfg);
  KernelContext local;
  KernelContext& c = ctx ? *ctx : local;
  FactorState s(X, c);
  const index_t m = X.order();
  index_t step = 0;
  for (index_t k0 = 0; k0 < m - 1; ++step) {
    c.step = step;
    const index_t nb = std::min(cfg.b, m - 1 - k0);
    const index_t j = k0 + nb;
    factor_panel(s, cfg.panel_algo, k0, nb, false);
    if (cfg.update_mode == UpdateMode::wimmer_w)
      trailing_wimmer_after(s, k0, j);
    else
      trailing_sandwiched(s, k0, j);
    k0 = j;
  }
  return finish_state(s, Variant::blk_right, FirstColumnMode::canonical_e0, false);
}

Factorization ltlt_blk_left(const DenseSkewMatrix& X, const BlockConfig& cfg, KernelContext* ctx) {
  check_cfg(cfg);
  KernelContext local;
  KernelContext& c = ctx ? *ctx : local;
  FactorState s(X, c);
  const index_t m = X.order();
  index_t step = 0;
  for (index_t k0 = 0; k0 < m - 1; ++step) {
    c.step = step;
    const index_t nb = std::min(cfg.b, m - 1 - k0);
    if (k0 > 0) {
      // History of columns 0..k0 applied to every panel column.
      auto L = s.L.strict();
      auto Xr = s.X.raw();
      BorderedWindow win;
      win.order = k0;
      win.sub = std::span<const double>(s.sub.data(), static_cast<std::size_t>(k0 - 1));
      win.trail = s.sub[static_cast<std::size_t>(k0 - 1)];
      std::vector<double> l10(static_cast<std::size_t>(k0));
      for (index_t col = k0; col < k0 + nb; ++col) {
        for (index_t q = 0; q < k0; ++q) l10[static_cast<std::size_t>(q)] = L(col, q);
        l10[0] = 0.0;
        const double last = col == k0 ? 1.0 : L(col, k0);
        const auto h = aasen_column(win, l10, c, last);
        double* x = Xr.col(col);
        for (index_t q = 1; q <= k0; ++q) {
          const double a = h[static_cast<std::size_t>(q)];
          const double* lq = L.col(q);
          for (index_t i = col + 1; i < m; ++i) x[i] -= lq[i] * a;
        }
        c.add(2 * u(k0) * u(m - col - 1));
      }
    }
    left_panel(s, k0, nb, k0 > 0);
    k0 += nb;
  }
  return finish_state(s, Variant::blk_left, FirstColumnMode::canonical_e0, false);
}

Factorization ltlt_blk_right_2b(const DenseSkewMatrix& X, const BlockConfig& cfg,
                                KernelContext* ctx) {
  check_cfg(cfg);
  KernelContext local;
  KernelContext& c = ctx ? *ctx : local;
  FactorState s(X, c);
  const index_t m = X.order();
  if (m >= 2) {
    if (s.X.raw()(1, 0) == 0.0) throw ZeroLeadingColumn();
    eliminate_column(s, 0);
  }
  index_t step = 0;
  for (index_t k0 = 0; k0 + 1 < m - 1; ++step) {
    c.step = step;
    const index_t nb = std::min(cfg.b, m - 2 - k0);
    const index_t j = k0 + nb;
    factor_panel(s, cfg.panel_algo, k0 + 1, nb, true);
    if (j + 1 < m) {
      const Matrix Lp = extract_panel(s.L, j + 1, k0 + 1, nb + 1);
      sandwiched_update(window(s.X, j + 1), Lp.view(), t_window(s, k0 + 1, j + 1), c);
    }
    k0 = j;
  }
  return finish_state(s, Variant::blk_2b, FirstColumnMode::canonical_e0, false);
}

Factorization ltlt_blk_wimmer(const DenseSkewMatrix& X, const BlockConfig& cfg, KernelContext* ctx) {
  check_cfg(cfg);
  KernelContext local;
  KernelContext& c = ctx ? *ctx : local;
  FactorState s(X, c);
  const index_t m = X.order();
  index_t step = 0;
  WimmerStash stash;
  for (index_t k0 = 0; k0 < m - 1; ++step) {
    c.step = step;
    const index_t nb = std::min(cfg.b, m - 1 - k0);
    const index_t j = k0 + nb;
    if (cfg.w_mode == WMode::during_panel) {
      wimmer_panel(s, k0, nb, true, &stash);
      trailing_wimmer_during(s, j, stash);
    } else {
      factor_panel(s, cfg.panel_algo, k0, nb, false);
      trailing_wimmer_after(s, k0, j);
    }
    k0 = j;
  }
  return finish_state(s, Variant::blk_wimmer, FirstColumnMode::canonical_e0, false);
}

}  // namespace skewfactor
