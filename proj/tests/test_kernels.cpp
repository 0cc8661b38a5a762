#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "skewfactor/kernels.hpp"

using namespace skewfactor;

namespace {

// n x n buffer whose strict lower part is random and whose diagonal and
// upper part hold NaN sentinels.
Matrix sentinel_window(oracle::Rng& rng, index_t n) {
  Matrix A(n, n, std::nan(""));
  for (index_t j = 0; j < n; ++j)
    for (index_t i = j + 1; i < n; ++i) A(i, j) = rng.uniform();
  return A;
}

// Strict lower part of A + sign (l x^T - x l^T), densely.
Matrix dense_skr2(const Matrix& A, const std::vector<double>& l, const std::vector<double>& x,
                  double sign) {
  Matrix B = oracle::strict_lower(A);
  const auto n = A.rows();
  for (index_t j = 0; j < n; ++j)
    for (index_t i = j + 1; i < n; ++i)
      B(i, j) += sign * (l[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)] -
                         x[static_cast<std::size_t>(i)] * l[static_cast<std::size_t>(j)]);
  return B;
}

bool upper_untouched(const Matrix& A) {
  for (index_t j = 0; j < A.cols(); ++j)
    for (index_t i = 0; i <= j && i < A.rows(); ++i)
      if (!std::isnan(A(i, j))) return false;
  return true;
}

Matrix col(const std::vector<double>& v) {
  Matrix c(static_cast<index_t>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) c(static_cast<index_t>(i), 0) = v[i];
  return c;
}

}  // namespace

TEST_CASE("skr2_lower, iteration 0 of the running example") {
  Matrix A(2, 2);
  A(1, 0) = 6.0;
  KernelContext ctx;
  const std::vector<double> l = {2, 3}, x = {4, 5};
  skr2_lower(A.view(), l, x, 1.0, ctx);
  CHECK(A(1, 0) == 8.0);
  CHECK(ctx.flops == 4);
}

TEST_CASE("skr2_lower with l == x or l == 0 is a no-op") {
  oracle::Rng rng(1);
  Matrix A = sentinel_window(rng, 5);
  const Matrix orig = oracle::strict_lower(A);
  const auto v = rng.vec(5);
  KernelContext ctx;
  skr2_lower(A.view(), v, v, 1.0, ctx);
  CHECK(oracle::max_abs_diff(oracle::strict_lower(A), orig) == 0.0);
  const std::vector<double> z(5, 0.0);
  skr2_lower(A.view(), z, rng.vec(5), -1.0, ctx);
  CHECK(oracle::max_abs_diff(oracle::strict_lower(A), orig) == 0.0);
}

TEST_CASE("skr2_lower matches the dense outer products and leaves the upper part alone") {
  oracle::Rng rng(2);
  for (index_t n : {1, 2, 3, 7, 12}) {
    Matrix A = sentinel_window(rng, n);
    const auto l = rng.vec(n), x = rng.vec(n);
    const Matrix expect = dense_skr2(A, l, x, -1.0);
    KernelContext ctx;
    skr2_lower(A.view(), l, x, -1.0, ctx);
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), expect) <= 4 * oracle::eps);
    CHECK(upper_untouched(A));
    CHECK(ctx.flops == static_cast<std::uint64_t>(2 * n * (n - 1)));
  }
}

TEST_CASE("skr2_lower rejects mismatched lengths") {
  Matrix A(3, 3);
  KernelContext ctx;
  const std::vector<double> a(3), b(2);
  CHECK_THROWS_AS(skr2_lower(A.view(), a, b, 1.0, ctx), std::invalid_argument);
}

TEST_CASE("skr2_lower_cols writes only the leading columns") {
  oracle::Rng rng(3);
  Matrix A = sentinel_window(rng, 6);
  const Matrix before = oracle::strict_lower(A);
  const auto l = rng.vec(6), x = rng.vec(6);
  const Matrix full = dense_skr2(A, l, x, 1.0);
  KernelContext ctx;
  skr2_lower_cols(A.view(), l, x, 1.0, 2, ctx);
  for (index_t j = 0; j < 6; ++j)
    for (index_t i = j + 1; i < 6; ++i) CHECK(A(i, j) == doctest::Approx(j < 2 ? full(i, j) : before(i, j)));
  CHECK(ctx.passes.empty());
}

TEST_CASE("skr2k_lower") {
  oracle::Rng rng(4);
  SUBCASE("one column is skr2_lower") {
    Matrix A = sentinel_window(rng, 5), B = A;
    const auto w = rng.vec(5), y = rng.vec(5);
    KernelContext ctx;
    skr2k_lower(A.view(), col(w).view(), col(y).view(), 1.0, ctx);
    skr2_lower(B.view(), w, y, 1.0, ctx);
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), oracle::strict_lower(B)) == 0.0);
  }
  SUBCASE("W == Y is a no-op") {
    Matrix A = sentinel_window(rng, 6);
    const Matrix before = oracle::strict_lower(A);
    const Matrix W = rng.matrix(6, 3);
    KernelContext ctx;
    skr2k_lower(A.view(), W.view(), W.view(), 1.0, ctx);
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), before) == 0.0);
  }
  SUBCASE("n=6, c=3 equals three skr2_lower calls") {
    Matrix A = sentinel_window(rng, 6);
    Matrix B = A;
    const Matrix W = rng.matrix(6, 3), Y = rng.matrix(6, 3);
    KernelContext ctx;
    skr2k_lower(A.view(), W.view(), Y.view(), -1.0, ctx);
    CHECK(ctx.flops == 2 * 3 * 6 * 5);
    for (index_t p = 0; p < 3; ++p) {
      std::vector<double> w(6), y(6);
      for (index_t i = 0; i < 6; ++i) {
        w[static_cast<std::size_t>(i)] = W(i, p);
        y[static_cast<std::size_t>(i)] = Y(i, p);
      }
      skr2_lower(B.view(), w, y, -1.0, ctx);
    }
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), oracle::strict_lower(B)) <= 8 * oracle::eps);
    CHECK(upper_untouched(A));
  }
  SUBCASE("shape mismatch") {
    Matrix A(4, 4), W(4, 2), Y(4, 3);
    KernelContext ctx;
    CHECK_THROWS_AS(skr2k_lower(A.view(), W.view(), Y.view(), 1.0, ctx), std::invalid_argument);
  }
}

TEST_CASE("split_s") {
  SUBCASE("order 1") {
    BorderedWindow w;
    w.order = 1;
    const SSplit S = split_s(w);
    CHECK(S.order == 1);
    CHECK(S.entry(0, 0) == 0.0);
  }
  SUBCASE("sub = (a)") {
    const std::vector<double> s = {2.5};
    BorderedWindow w{2, s, std::nullopt, std::nullopt};
    const SSplit S = split_s(w);
    CHECK(S.entry(1, 0) == 2.5);
    CHECK(S.entry(0, 1) == 0.0);
    CHECK(S.entry(1, 0) - S.entry(0, 1) == 2.5);
  }
  SUBCASE("sub = (a, b, c)") {
    const std::vector<double> s = {2.0, 3.0, 5.0};
    BorderedWindow w{4, s, std::nullopt, std::nullopt};
    const SSplit S = split_s(w);
    CHECK(S.entry(1, 0) == 2.0);
    CHECK(S.entry(1, 2) == -3.0);
    CHECK(S.entry(3, 2) == 5.0);
    const Matrix T = oracle::dense_tridiagonal(s);
    for (index_t i = 0; i < 4; ++i)
      for (index_t j = 0; j < 4; ++j) CHECK(S.entry(i, j) - S.entry(j, i) == T(i, j));
  }
  SUBCASE("borders reconstruct exactly") {
    oracle::Rng rng(5);
    for (index_t k = 1; k <= 7; ++k) {
      const auto s = rng.vec(k - 1);
      const double lead = rng.uniform(), trail = rng.uniform();
      BorderedWindow w{k, s, lead, trail};
      const SSplit S = split_s(w);
      std::vector<double> all = {lead};
      all.insert(all.end(), s.begin(), s.end());
      all.push_back(trail);
      const Matrix T = oracle::dense_tridiagonal(all);
      REQUIRE(S.order == k + 2);
      for (index_t i = 0; i < k + 2; ++i)
        for (index_t j = 0; j < k + 2; ++j) CHECK(S.entry(i, j) - S.entry(j, i) == T(i, j));
    }
  }
}

TEST_CASE("build_w") {
  oracle::Rng rng(6);
  SUBCASE("S = 0 gives W = 0") {
    const std::vector<double> s = {0.0, 0.0, 0.0};
    const Matrix L = rng.matrix(5, 4);
    KernelContext ctx;
    const WorkPanel P = build_w(L.view(), split_s({4, s, std::nullopt, std::nullopt}), ctx);
    CHECK(oracle::max_abs(P.W) == 0.0);
  }
  SUBCASE("expanded W has zero odd columns and equals L S") {
    for (index_t k = 1; k <= 7; ++k) {
      const auto s = rng.vec(k - 1);
      const Matrix L = rng.matrix(9, k);
      KernelContext ctx;
      const SSplit S = split_s({k, s, std::nullopt, std::nullopt});
      const WorkPanel P = build_w(L.view(), S, ctx);
      CHECK(P.width() == (k + 1) / 2);
      Matrix Sd(k, k);
      for (index_t i = 0; i < k; ++i)
        for (index_t j = 0; j < k; ++j) Sd(i, j) = S.entry(i, j);
      const Matrix E = P.expanded_w();
      CHECK(oracle::max_abs_diff(E, oracle::matmul(L, Sd)) <= 4 * oracle::eps);
      for (index_t c = 1; c < k; c += 2)
        for (index_t i = 0; i < 9; ++i) CHECK(E(i, c) == 0.0);
    }
  }
  SUBCASE("L 6x4 with sub (a,b,c): skr2k with (W, L columns) equals L (S - S^T) L^T") {
    const std::vector<double> s = {0.7, -1.3, 0.4};
    const Matrix L = rng.matrix(6, 4);
    KernelContext ctx;
    const WorkPanel P = build_w(L.view(), split_s({4, s, std::nullopt, std::nullopt}), ctx);
    Matrix A(6, 6);
    skr2k_lower(A.view(), P.W.view(), P.Y.view(), 1.0, ctx);
    const Matrix expect = oracle::matmul(oracle::matmul(L, oracle::dense_tridiagonal(s)), oracle::transpose(L));
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), oracle::strict_lower(expect)) <= 8 * 6 * oracle::eps);
  }
  SUBCASE("W L^T - L W^T == L (S - S^T) L^T on random n <= 16") {
    for (index_t n = 1; n <= 16; ++n) {
      const index_t k = 1 + rng.below(n);
      const auto s = rng.vec(k - 1);
      const Matrix L = rng.matrix(n, k);
      KernelContext ctx;
      const WorkPanel P = build_w(L.view(), split_s({k, s, std::nullopt, std::nullopt}), ctx);
      const Matrix E = P.expanded_w();
      const Matrix lhs = oracle::sub(oracle::matmul(E, oracle::transpose(L)), oracle::matmul(L, oracle::transpose(E)));
      const Matrix rhs = oracle::matmul(oracle::matmul(L, oracle::dense_tridiagonal(s)), oracle::transpose(L));
      CHECK(oracle::max_abs_diff(lhs, rhs) <= 8 * n * oracle::eps * std::max(1.0, oracle::max_abs(rhs)));
    }
  }
  SUBCASE("shape mismatch") {
    const Matrix L = rng.matrix(4, 3);
    KernelContext ctx;
    const std::vector<double> s = {1.0};
    CHECK_THROWS_AS(build_w(L.view(), split_s({2, s, std::nullopt, std::nullopt}), ctx), std::invalid_argument);
  }
}

TEST_CASE("sandwiched_update") {
  oracle::Rng rng(7);
  SUBCASE("zero window leaves X unchanged") {
    Matrix A = sentinel_window(rng, 5);
    const Matrix before = oracle::strict_lower(A);
    const std::vector<double> s = {0.0, 0.0};
    const Matrix L = rng.matrix(5, 3);
    KernelContext ctx;
    sandwiched_update(A.view(), L.view(), {3, s, std::nullopt, std::nullopt}, ctx);
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), before) == 0.0);
  }
  SUBCASE("smallest bordered panel is a single skr2_lower") {
    // Window [0 -t; t 0] as one index plus a trailing border; panel
    // columns (l, e) with e supported on rows >= 1 of the window.
    const index_t n = 6;
    Matrix A = sentinel_window(rng, n), B = A;
    const double t = 0.8;
    Matrix L(n, 2);
    std::vector<double> l(n), e(n);
    for (index_t i = 0; i < n; ++i) {
      L(i, 0) = l[static_cast<std::size_t>(i)] = rng.uniform();
      L(i, 1) = rng.uniform();
      e[static_cast<std::size_t>(i)] = t * L(i, 1);
    }
    KernelContext ctx;
    sandwiched_update(A.view(), L.view(), {1, {}, std::nullopt, t}, ctx);
    skr2_lower(B.view(), e, l, -1.0, ctx);
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), oracle::strict_lower(B)) <= 4 * oracle::eps);
  }
  SUBCASE("n=8, k=4 equals the dense triple product") {
    Matrix A = sentinel_window(rng, 8);
    const Matrix before = oracle::strict_lower(A);
    const auto s = rng.vec(3);
    const double border = rng.uniform();
    const Matrix L = rng.matrix(8, 5);
    KernelContext ctx;
    sandwiched_update(A.view(), L.view(), {4, s, std::nullopt, border}, ctx);
    std::vector<double> all = s;
    all.push_back(border);
    const Matrix prod = oracle::matmul(oracle::matmul(L, oracle::dense_tridiagonal(all)), oracle::transpose(L));
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), oracle::sub(before, oracle::strict_lower(prod))) <= 1e-12);
    CHECK(upper_untouched(A));
  }
  SUBCASE("random windows up to n=32") {
    for (index_t n = 1; n <= 32; n += 3) {
      const index_t k = 1 + rng.below(std::min<index_t>(n, 9));
      Matrix A = sentinel_window(rng, n);
      const Matrix before = oracle::strict_lower(A);
      const auto s = rng.vec(k - 1);
      const Matrix L = rng.matrix(n, k);
      KernelContext ctx;
      sandwiched_update(A.view(), L.view(), {k, s, std::nullopt, std::nullopt}, ctx);
      const Matrix prod = oracle::matmul(oracle::matmul(L, oracle::dense_tridiagonal(s)), oracle::transpose(L));
      const double scale = std::max({1.0, oracle::max_abs(before), oracle::max_abs(prod)});
      CHECK(oracle::max_abs_diff(oracle::strict_lower(A), oracle::sub(before, oracle::strict_lower(prod))) <=
            8 * n * oracle::eps * scale);
    }
  }
}

TEST_CASE("gauss_apply_two_sided") {
  oracle::Rng rng(8);
  SUBCASE("l = 0 is the identity") {
    Matrix A = sentinel_window(rng, 5);
    const Matrix before = oracle::strict_lower(A);
    const std::vector<double> z(4, 0.0);
    KernelContext ctx;
    gauss_apply_two_sided(A.view(), z, GaussDirection::forward, ctx);
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), before) == 0.0);
  }
  SUBCASE("forward then inverse restores X") {
    for (index_t n = 1; n <= 8; ++n) {
      Matrix A = sentinel_window(rng, n);
      const Matrix before = oracle::strict_lower(A);
      const auto l = rng.vec(n - 1);
      KernelContext ctx;
      gauss_apply_two_sided(A.view(), l, GaussDirection::forward, ctx);
      gauss_apply_two_sided(A.view(), l, GaussDirection::inverse, ctx);
      CHECK(oracle::max_abs_diff(oracle::strict_lower(A), before) <= 4 * oracle::eps);
    }
  }
  SUBCASE("matches G X G^T densely") {
    Matrix A = sentinel_window(rng, 6);
    const Matrix X = oracle::sub(oracle::strict_lower(A), oracle::transpose(oracle::strict_lower(A)));
    const auto l = rng.vec(5);
    Matrix G(6, 6);
    for (index_t i = 0; i < 6; ++i) G(i, i) = 1.0;
    for (index_t i = 1; i < 6; ++i) G(i, 0) = -l[static_cast<std::size_t>(i - 1)];
    const Matrix expect = oracle::matmul(oracle::matmul(G, X), oracle::transpose(G));
    KernelContext ctx;
    gauss_apply_two_sided(A.view(), l, GaussDirection::forward, ctx);
    CHECK(oracle::max_abs_diff(oracle::strict_lower(A), oracle::strict_lower(expect)) <= 8 * oracle::eps);
  }
  SUBCASE("running example: one right-looking step") {
    // Trailing 3x3 window of the running example after l = (2, 3) is
    // formed from the first column: X(3,2) becomes 6 + (3*4 - 5*2) = 8.
    Matrix A(3, 3);
    A(1, 0) = 4;
    A(2, 0) = 5;
    A(2, 1) = 6;
    KernelContext ctx;
    const std::vector<double> l = {2, 3};
    gauss_apply_two_sided(A.view(), l, GaussDirection::forward, ctx);
    CHECK(A(2, 1) == 8.0);
    CHECK(A(1, 0) == 4.0);
    CHECK(A(2, 0) == 5.0);
  }
  SUBCASE("length mismatch") {
    Matrix A(4, 4);
    KernelContext ctx;
    const std::vector<double> l(2);
    CHECK_THROWS_AS(gauss_apply_two_sided(A.view(), l, GaussDirection::forward, ctx), std::invalid_argument);
  }
}

TEST_CASE("aasen_column") {
  oracle::Rng rng(9);
  SUBCASE("k = 0") {
    KernelContext ctx;
    const auto h = aasen_column({0, {}, std::nullopt, 1.0}, {}, ctx);
    REQUIRE(h.size() == 1);
    CHECK(h[0] == 0.0);
  }
  SUBCASE("k = 1 matches the 2x2 bordered product") {
    const double a = 1.7, lam = -0.6;
    const std::vector<double> l10 = {lam};
    KernelContext ctx;
    const auto h = aasen_column({1, {}, std::nullopt, a}, l10, ctx);
    REQUIRE(h.size() == 2);
    CHECK(h[0] == doctest::Approx(-a));
    CHECK(h[1] == doctest::Approx(a * lam));
  }
  SUBCASE("random k <= 6 equals the dense product, O(k) flops") {
    for (index_t k = 1; k <= 6; ++k) {
      const auto s = rng.vec(k - 1);
      const double border = rng.uniform();
      const auto l10 = rng.vec(k);
      KernelContext ctx;
      const auto h = aasen_column({k, s, std::nullopt, border}, l10, ctx);
      std::vector<double> all = s;
      all.push_back(border);
      const Matrix T = oracle::dense_tridiagonal(all);
      std::vector<double> v = l10;
      v.push_back(1.0);
      for (index_t i = 0; i <= k; ++i) {
        double acc = 0.0;
        for (index_t j = 0; j <= k; ++j) acc += T(i, j) * v[static_cast<std::size_t>(j)];
        CHECK(h[static_cast<std::size_t>(i)] == doctest::Approx(acc).epsilon(1e-14));
      }
      CHECK(ctx.flops <= static_cast<std::uint64_t>(6 * (k + 1)));
    }
  }
  SUBCASE("length mismatch") {
    KernelContext ctx;
    const std::vector<double> l10(2);
    CHECK_THROWS_AS(aasen_column({3, std::vector<double>(2), std::nullopt, 1.0}, l10, ctx), std::invalid_argument);
  }
}
