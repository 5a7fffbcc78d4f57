#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>
#include <random>

#include "bsq/double_double.hpp"

using bsq::DoubleDouble;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

Big big(DoubleDouble v) { return Big(v.hi()) + Big(v.lo()); }

double rel_err(DoubleDouble got, const Big& exact) {
  if (exact == 0) return static_cast<double>(abs(big(got)));
  return static_cast<double>(abs((big(got) - exact) / exact));
}

DoubleDouble random_dd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> e(-20, 20);
  const double hi = std::ldexp(u(rng), e(rng));
  return DoubleDouble::from_parts(hi, hi * 0x1p-60 * u(rng));
}

}  // namespace

TEST(DoubleDouble, ConstructionKeepsLongDoubleBits) {
  const long double x = 1.0L / 3.0L;
  const DoubleDouble d(x);
  EXPECT_EQ(static_cast<long double>(d), x);
  EXPECT_EQ(static_cast<double>(DoubleDouble(0.1)), 0.1);
  EXPECT_EQ(DoubleDouble(3).hi(), 3.0);
}

TEST(DoubleDouble, ArithmeticAgainstMultiprecision) {
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const DoubleDouble a = random_dd(rng);
    const DoubleDouble b = random_dd(rng);
    const Big A = big(a);
    const Big B = big(b);
    worst = std::max(worst, rel_err(a * b, A * B));
    worst = std::max(worst, rel_err(a / b, A / B));
    if (a.hi() * b.hi() > 0) worst = std::max(worst, rel_err(a + b, A + B));
    if (a.hi() * b.hi() < 0) worst = std::max(worst, rel_err(a - b, A - B));
  }
  EXPECT_LT(worst, 0x1p-100);
}

TEST(DoubleDouble, SqrtAndHypot) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const DoubleDouble a = abs(random_dd(rng));
    const DoubleDouble b = random_dd(rng);
    EXPECT_LT(rel_err(sqrt(a), boost::multiprecision::sqrt(big(a))), 0x1p-100);
    EXPECT_LT(rel_err(hypot(a, b), boost::multiprecision::sqrt(big(a) * big(a) + big(b) * big(b))), 0x1p-100);
  }
  EXPECT_EQ(sqrt(DoubleDouble(0.0)), DoubleDouble(0.0));
}

TEST(DoubleDouble, CancellationIsResolved) {
  const DoubleDouble one(1.0);
  const DoubleDouble tiny(0x1p-80);
  EXPECT_EQ(static_cast<double>((one + tiny) - one), 0x1p-80);
  EXPECT_GT(one + tiny, one);
}

TEST(DoubleDouble, ComplexArithmetic) {
  using C = std::complex<DoubleDouble>;
  const C z(DoubleDouble(1.0) / 3, DoubleDouble(2.0) / 7);
  const C w = z * std::conj(z);
  const Big expect = Big(1) / 9 + Big(4) / 49;
  EXPECT_LT(rel_err(w.real(), expect), 0x1p-100);
  using std::abs;
  const C q = z / z;
  EXPECT_LT(static_cast<double>(abs(q.real() - DoubleDouble(1))), 1e-30);
  EXPECT_LT(static_cast<double>(abs(q.imag())), 1e-30);
}

TEST(DoubleDouble, Limits) {
  EXPECT_EQ(std::numeric_limits<DoubleDouble>::digits, 106);
  EXPECT_EQ(static_cast<double>(std::numeric_limits<DoubleDouble>::epsilon()), 0x1p-104);
  EXPECT_TRUE(isfinite(DoubleDouble(1.0)));
  EXPECT_FALSE(isfinite(DoubleDouble(std::numeric_limits<double>::infinity())));
}
