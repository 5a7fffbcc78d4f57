#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "bsq/errors.hpp"
#include "bsq/quantize_fock.hpp"
#include "bsq/symbol_text.hpp"
#include "oracles.hpp"

using namespace bsq;

TEST(Ladder, Entries) {
  const auto lp = ladder<double>(3, 0.5);
  EXPECT_DOUBLE_EQ(lp.a(0, 1).real(), std::sqrt(0.5));
  EXPECT_DOUBLE_EQ(lp.a(1, 2).real(), 1.0);
  EXPECT_EQ(lp.a(1, 0), cplx(0.0));
  EXPECT_EQ(lp.a_dag, adjoint(lp.a));
  EXPECT_THROW(ladder<double>(1, 0.5), ConfigError);
  EXPECT_THROW(ladder<double>(4, -1.0), ConfigError);
}

TEST(Ladder, CommutatorAwayFromEdge) {
  const double hbar = 0.3;
  const auto lp = ladder<double>(8, hbar);
  const ComplexMatrix c = lp.a * lp.a_dag - lp.a_dag * lp.a;
  for (std::size_t i = 0; i + 1 < 8; ++i) EXPECT_NEAR(std::abs(c(i, i) - hbar), 0.0, 1e-15);
  const ComplexMatrix comm = lp.position() * lp.momentum() - lp.momentum() * lp.position();
  EXPECT_NEAR(std::abs(comm(2, 2) - cplx(0.0, hbar)), 0.0, 1e-15);
  const auto X = lp.position();
  EXPECT_NEAR(std::abs(ladder<double>(4, 1.0).position()(0, 1) - std::sqrt(0.5)), 0.0, 1e-15);
  EXPECT_LE(max_abs_diff(X, adjoint(X)), 0.0);
}

TEST(QuantizePlane, HarmonicOscillatorIsDiagonal) {
  const double hbar = 1.0 / 20;
  const TruncatedOperator op = quantize_plane(parse_plane_symbol("0", 0.0), hbar, 20);
  ASSERT_EQ(op.matrix.rows(), 21u);
  EXPECT_EQ(op.basis.kind, BasisKind::fock);
  for (std::size_t i = 0; i < 21; ++i)
    for (std::size_t j = 0; j < 21; ++j) {
      const cplx expect = i == j ? cplx(hbar * (2.0 * i + 1)) : cplx(0.0);
      EXPECT_NEAR(std::abs(op.matrix(i, j) - expect), 0.0, 1e-14);
    }
}

TEST(McCoy, MatchesFullSymmetrization) {
  const auto lp = ladder<double>(12, 0.37);
  const ComplexMatrix X = lp.position();
  const ComplexMatrix Xi = lp.momentum();
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; m + n <= 6; ++n) {
      const std::size_t keep = 12 - static_cast<std::size_t>(std::max(m + n - 1, 0));
      const ComplexMatrix got = mccoy_weyl(X, Xi, m, n).leading_block(keep, keep);
      const ComplexMatrix ref = oracle::full_symmetrization(X, Xi, m, n).leading_block(keep, keep);
      EXPECT_LE(max_abs_diff(got, ref), 1e-12) << m << "," << n;
    }
}

TEST(QuantizePlane, PaddingIsSufficient) {
  const PlaneSymbol s = parse_plane_symbol("x^4 + x^3*xi - 0.5*xi^2*x + xi^5", 0.2);
  const int N = 10;
  const int d = s.total_degree();
  const auto base = plane_matrix<double>(s, 0.1, N, d);
  const auto wide = plane_matrix<double>(s, 0.1, N, d + 2);
  EXPECT_LE(max_abs_diff(base, wide), 1e-12);
  EXPECT_LE(max_abs_diff(base, quantize_plane(s, 0.1, N).matrix), 0.0);
  // no padding contaminates the trailing entries
  const auto bare = plane_matrix<double>(s, 0.1, N, 0);
  EXPECT_GT(max_abs_diff(base, bare), 1e-6);
}

TEST(QuantizePlane, MatchesSymmetrizationOnLargerSpace) {
  const PlaneSymbol s = parse_plane_symbol("x^2 + xi^2 ; x^3 - 2*x*xi^2", 0.3);
  const int N = 6;
  const double hbar = 0.2;
  const auto lp = ladder<double>(N + 12, hbar);
  const ComplexMatrix X = lp.position();
  const ComplexMatrix Xi = lp.momentum();
  ComplexMatrix ref = oracle::full_symmetrization(X, Xi, 2, 0) + oracle::full_symmetrization(X, Xi, 0, 2);
  ref += (oracle::full_symmetrization(X, Xi, 3, 0) - oracle::full_symmetrization(X, Xi, 1, 2) * cplx(2.0)) *
         cplx(0.0, 0.3);
  const ComplexMatrix got = quantize_plane(s, hbar, N).matrix;
  EXPECT_LE(max_abs_diff(got, ref.leading_block(N + 1, N + 1)), 1e-12);
}

TEST(QuantizePlane, ParityOfMonomials) {
  const int N = 12;
  const ComplexMatrix f = quantize_plane(parse_plane_symbol("0", 0.0), 0.1, N).matrix;
  for (const char* q : {"x^3", "x^2*xi", "x^4", "x*xi", "xi"}) {
    const PlaneSymbol p = parse_plane_symbol(q, 1.0);
    const ComplexMatrix m = quantize_plane(p, 0.1, N).matrix - f;
    int degree = 0;
    for (const auto& [key, c] : p.q()) degree = std::max(degree, key.first + key.second);
    const std::size_t odd = static_cast<std::size_t>(degree % 2);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(N); ++i)
      for (std::size_t j = 0; j <= static_cast<std::size_t>(N); ++j)
        if ((i + j) % 2 != odd) EXPECT_EQ(m(i, j), cplx(0.0)) << q << " " << i << "," << j;
  }
}

TEST(QuantizePlane, HermitianParts) {
  const PlaneSymbol s = parse_plane_symbol("x^2 + xi^2 ; x^3*xi + xi^4 - x", 0.0);
  const ComplexMatrix f = quantize_plane(s, 0.1, 15).matrix;
  EXPECT_LE(max_abs_diff(f, adjoint(f)), 1e-14);
  const ComplexMatrix p = quantize_plane(s.with_epsilon(0.25), 0.1, 15).matrix;
  const ComplexMatrix q = (p - f) * cplx(0.0, -1.0 / 0.25);
  EXPECT_LE(max_abs_diff(q, adjoint(q)), 1e-13);
}

TEST(QuantizePlane, WidePrecisionAgrees) {
  const PlaneSymbol s = parse_plane_symbol("x^4 + x^3", 0.2);
  const auto d = plane_matrix<double>(s, 0.1, 12);
  const auto q = plane_matrix<DoubleDouble>(s, DoubleDouble(0.1), 12);
  EXPECT_LE(max_abs_diff(d, convert<double>(q)), 1e-14);
}

TEST(QuantizePlane, Errors) {
  const PlaneSymbol s = parse_plane_symbol("x^2", 0.1);
  EXPECT_THROW(quantize_plane(s, 0.1, 0), ConfigError);
  EXPECT_THROW(quantize_plane(s, 0.0, 4), ConfigError);
}
