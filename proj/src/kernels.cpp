#include "skewfactor/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace skewfactor {

namespace {
std::uint64_t u(index_t v) { return static_cast<std::uint64_t>(v); }
}  // namespace

index_t BorderedWindow::total_order() const {
  if (order == 0) return 0;
  return order + (lead ? 1 : 0) + (trail ? 1 : 0);
}

std::vector<double> BorderedWindow::couplings() const {
  std::vector<double> c;
  if (order == 0) return c;
  if (static_cast<index_t>(sub.size()) != order - 1)
    throw std::invalid_argument("window subdiagonal length mismatch");
  if (lead) c.push_back(*lead);
  c.insert(c.end(), sub.begin(), sub.end());
  if (trail) c.push_back(*trail);
  return c;
}

double SSplit::entry(index_t i, index_t j) const {
  if (i < 0 || j < 0 || i >= order || j >= order) throw std::out_of_range("S index");
  if (i % 2 == 0) return 0.0;
  if (j == i - 1) return coupling[static_cast<std::size_t>(i - 1)];
  if (j == i + 1) return -coupling[static_cast<std::size_t>(i)];
  return 0.0;
}

Matrix WorkPanel::expanded_w() const {
  Matrix E(W.rows(), expanded_cols);
  for (index_t c = 0; c < width(); ++c) {
    const index_t lc = logical_cols[static_cast<std::size_t>(c)];
    for (index_t i = 0; i < W.rows(); ++i) E(i, lc) = W(i, c);
  }
  return E;
}

void skr2_lower(MatrixView X, std::span<const double> l, std::span<const double> x, double sign,
                KernelContext& ctx) {
  skr2_lower_cols(X, l, x, sign, X.cols, ctx);
  ctx.note_pass(X.rows);
}

void skr2_lower_cols(MatrixView X, std::span<const double> l, std::span<const double> x,
                     double sign, index_t col_end, KernelContext& ctx) {
  const index_t n = X.rows;
  if (X.cols != n || static_cast<index_t>(l.size()) != n || static_cast<index_t>(x.size()) != n)
    throw std::invalid_argument("skr2_lower: length mismatch");
  const index_t jend = std::min(col_end, n);
  for (index_t j = 0; j < jend; ++j) {
    const double a = sign > 0 ? x[j] : -x[j];
    const double b = sign > 0 ? l[j] : -l[j];
    double* col = X.col(j);
    for (index_t i = j + 1; i < n; ++i) col[i] += l[i] * a - x[i] * b;
    ctx.add(4 * u(n - j - 1));
  }
}

void skr2k_lower(MatrixView X, ConstMatrixView W, ConstMatrixView Y, double sign,
                 KernelContext& ctx) {
  const index_t n = X.rows;
  if (X.cols != n || W.rows != n || Y.rows != n || W.cols != Y.cols)
    throw std::invalid_argument("skr2k_lower: shape mismatch");
  const index_t c = W.cols;
  for (index_t j = 0; j < n; ++j) {
    double* col = X.col(j);
    for (index_t p = 0; p < c; ++p) {
      const double a = sign > 0 ? Y(j, p) : -Y(j, p);
      const double b = sign > 0 ? W(j, p) : -W(j, p);
      const double* w = W.col(p);
      const double* y = Y.col(p);
      for (index_t i = j + 1; i < n; ++i) col[i] += w[i] * a - y[i] * b;
    }
  }
  ctx.add(2 * u(c) * u(n) * u(n > 0 ? n - 1 : 0));
  ctx.note_pass(n);
}

SSplit split_s(const BorderedWindow& Twin) {
  SSplit S;
  S.order = Twin.total_order();
  S.coupling = Twin.couplings();
  return S;
}

WorkPanel build_w(ConstMatrixView Lpanel, const SSplit& S, KernelContext& ctx) {
  if (Lpanel.cols != S.order) throw std::invalid_argument("build_w: shape mismatch");
  const index_t rows = Lpanel.rows;
  const index_t k = S.order;
  const index_t width = (k + 1) / 2;
  WorkPanel P;
  P.W = Matrix(rows, width);
  P.Y = Matrix(rows, width);
  P.expanded_cols = k;
  for (index_t q = 0; q < width; ++q) {
    const index_t c = 2 * q;
    P.logical_cols.push_back(c);
    double* w = P.W.view().col(q);
    const double* y = Lpanel.col(c);
    for (index_t i = 0; i < rows; ++i) P.Y(i, q) = y[i];
    // S(:, c) has -t[c-1] in row c-1 and t[c] in row c+1.
    const bool has_prev = c >= 1;
    const bool has_next = c + 1 < k;
    if (has_prev && has_next) {
      const double a = -S.coupling[static_cast<std::size_t>(c - 1)];
      const double b = S.coupling[static_cast<std::size_t>(c)];
      const double* lp = Lpanel.col(c - 1);
      const double* ln = Lpanel.col(c + 1);
      for (index_t i = 0; i < rows; ++i) w[i] = a * lp[i] + b * ln[i];
      ctx.add(3 * u(rows));
    } else if (has_prev) {
      const double a = -S.coupling[static_cast<std::size_t>(c - 1)];
      const double* lp = Lpanel.col(c - 1);
      for (index_t i = 0; i < rows; ++i) w[i] = a * lp[i];
      ctx.add(u(rows));
    } else if (has_next) {
      const double b = S.coupling[static_cast<std::size_t>(c)];
      const double* ln = Lpanel.col(c + 1);
      for (index_t i = 0; i < rows; ++i) w[i] = b * ln[i];
      ctx.add(u(rows));
    }
  }
  return P;
}

void sandwiched_update(MatrixView X, ConstMatrixView Lpanel, const BorderedWindow& Twin,
                       KernelContext& ctx) {
  if (X.rows != Lpanel.rows || Lpanel.cols != Twin.total_order())
    throw std::invalid_argument("sandwiched_update: shape mismatch");
  const WorkPanel P = build_w(Lpanel, split_s(Twin), ctx);
  skr2k_lower(X, P.W.view(), P.Y.view(), -1.0, ctx);
}

void gauss_apply_two_sided(MatrixView X, std::span<const double> l, GaussDirection dir,
                           KernelContext& ctx) {
  const index_t n = X.rows;
  if (n == 0) {
    if (!l.empty()) throw std::invalid_argument("gauss_apply_two_sided: length mismatch");
    return;
  }
  if (static_cast<index_t>(l.size()) != n - 1)
    throw std::invalid_argument("gauss_apply_two_sided: length mismatch");
  std::span<const double> x(X.col(0) + 1, static_cast<std::size_t>(n - 1));
  skr2_lower(X.block(1, 1, n - 1, n - 1), l, x, dir == GaussDirection::forward ? 1.0 : -1.0, ctx);
}

std::vector<double> aasen_column(const BorderedWindow& T00win, std::span<const double> l10,
                                 KernelContext& ctx, double last) {
  const index_t k = T00win.order;
  if (static_cast<index_t>(l10.size()) != k) throw std::invalid_argument("aasen_column: length mismatch");
  std::vector<double> h(static_cast<std::size_t>(k + 1), 0.0);
  if (k == 0) return h;
  if (static_cast<index_t>(T00win.sub.size()) != k - 1 || !T00win.trail)
    throw std::invalid_argument("aasen_column: window needs k-1 couplings and a border");
  // t[i] couples indices i and i+1 of the bordered window of order k+1.
  auto t = [&](index_t i) {
    return i < k - 1 ? T00win.sub[static_cast<std::size_t>(i)] : *T00win.trail;
  };
  auto v = [&](index_t i) { return i < k ? l10[static_cast<std::size_t>(i)] : last; };
  for (index_t i = 0; i <= k; ++i) {
    double s = 0.0;
    if (i >= 1) {
      s = t(i - 1) * v(i - 1);
      ctx.add(1);
    }
    if (i < k) {
      s -= t(i) * v(i + 1);
      ctx.add(i >= 1 ? 2 : 1);
    }
    h[static_cast<std::size_t>(i)] = s;
  }
  return h;
}

}  // namespace skewfactor
