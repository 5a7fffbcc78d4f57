#pragma once

#include <cmath>
#include <limits>
#include <type_traits>

namespace bsq {

// Unevaluated sum hi + lo of two doubles, |lo| <= ulp(hi)/2: about 106 bits
// of significand on plain hardware double arithmetic. Error-free transforms
// follow Dekker/Knuth (two-sum, FMA-based two-product).
class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  template <class T>
    requires std::is_arithmetic_v<T>
  constexpr DoubleDouble(T v) : hi_(static_cast<double>(v)), lo_(0.0) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_same_v<T, long double> || (std::is_integral_v<T> && sizeof(T) > 4)) {
      lo_ = static_cast<double>(v - static_cast<T>(hi_));
    }
  }
  static constexpr DoubleDouble from_parts(double hi, double lo) {
    DoubleDouble r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }

  constexpr double hi() const noexcept { return hi_; }
  constexpr double lo() const noexcept { return lo_; }
  explicit constexpr operator double() const noexcept { return hi_ + lo_; }
  explicit operator long double() const noexcept { return static_cast<long double>(hi_) + lo_; }

  friend DoubleDouble operator-(DoubleDouble a) { return from_parts(-a.hi_, -a.lo_); }

  friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    Pair s = two_sum(a.hi_, b.hi_);
    const Pair t = two_sum(a.lo_, b.lo_);
    s.e += t.s;
    s = quick_two_sum(s.s, s.e);
    s.e += t.e;
    s = quick_two_sum(s.s, s.e);
    return from_parts(s.s, s.e);
  }
  friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

  friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    const double p = a.hi_ * b.hi_;
    double e = std::fma(a.hi_, b.hi_, -p);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    const Pair r = quick_two_sum(p, e);
    return from_parts(r.s, r.e);
  }

  friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
    const double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * q1;
    const double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    const double q3 = r.hi_ / b.hi_;
    const Pair q = quick_two_sum(q1, q2);
    return from_parts(q.s, q.e) + q3;
  }

  DoubleDouble& operator+=(DoubleDouble o) { return *this = *this + o; }
  DoubleDouble& operator-=(DoubleDouble o) { return *this = *this - o; }
  DoubleDouble& operator*=(DoubleDouble o) { return *this = *this * o; }
  DoubleDouble& operator/=(DoubleDouble o) { return *this = *this / o; }

  friend bool operator==(DoubleDouble a, DoubleDouble b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
  friend bool operator!=(DoubleDouble a, DoubleDouble b) { return !(a == b); }
  friend bool operator<(DoubleDouble a, DoubleDouble b) { return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_); }
  friend bool operator>(DoubleDouble a, DoubleDouble b) { return b < a; }
  friend bool operator<=(DoubleDouble a, DoubleDouble b) { return !(b < a); }
  friend bool operator>=(DoubleDouble a, DoubleDouble b) { return !(a < b); }

  friend DoubleDouble abs(DoubleDouble a) { return a.hi_ < 0.0 || (a.hi_ == 0.0 && a.lo_ < 0.0) ? -a : a; }
  friend DoubleDouble fabs(DoubleDouble a) { return abs(a); }

  friend DoubleDouble sqrt(DoubleDouble a) {
    if (a.hi_ <= 0.0) return DoubleDouble{};
    const double x = 1.0 / std::sqrt(a.hi_);
    const double ax = a.hi_ * x;
    const DoubleDouble ax2 = DoubleDouble(ax) * DoubleDouble(ax);
    return DoubleDouble(ax) + (a - ax2).hi_ * (x * 0.5);
  }

  friend DoubleDouble hypot(DoubleDouble a, DoubleDouble b) {
    a = abs(a);
    b = abs(b);
    const DoubleDouble m = a < b ? b : a;
    if (m.hi_ == 0.0) return m;
    const DoubleDouble x = a / m;
    const DoubleDouble y = b / m;
    return m * sqrt(x * x + y * y);
  }

  friend bool isfinite(DoubleDouble a) { return std::isfinite(a.hi_) && std::isfinite(a.lo_); }

 private:
  struct Pair {
    double s;
    double e;
  };
  static Pair two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  static Pair quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

}  // namespace bsq

template <>
class std::numeric_limits<bsq::DoubleDouble> {
 public:
  static constexpr bool is_specialized = true;
  static constexpr bsq::DoubleDouble epsilon() noexcept { return bsq::DoubleDouble(0x1p-104); }
  static constexpr bsq::DoubleDouble min() noexcept { return bsq::DoubleDouble(0x1p-969); }
  static constexpr bsq::DoubleDouble max() noexcept { return bsq::DoubleDouble(0x1.fffffffffffffp+1022); }
  static constexpr int digits = 106;
};
