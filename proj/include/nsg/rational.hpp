#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nsg {

/// Exact dyadic rational num / 2^exp. The class-count partial sums and the
/// 1.08 / 1.06 threshold checks are inequality proofs at desk scale, so they
/// must never pass through floating point.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(std::int64_t integer) : num_(integer) {}  // NOLINT: implicit by design

  /// 2^e for any e in [-62, 62].
  static Dyadic pow2(int e) {
    Dyadic d;
    if (e >= 0) {
      if (e > 62) throw std::overflow_error("Dyadic::pow2");
      d.num_ = std::int64_t{1} << e;
    } else {
      if (e < -62) throw std::overflow_error("Dyadic::pow2");
      d.num_ = 1;
      d.exp_ = -e;
    }
    return d;
  }

  Dyadic& operator+=(const Dyadic& o) {
    const int e = std::max(exp_, o.exp_);
    __int128 a = static_cast<__int128>(num_) << (e - exp_);
    __int128 b = static_cast<__int128>(o.num_) << (e - o.exp_);
    __int128 sum = a + b;
    exp_ = e;
    set_checked(sum);
    normalize();
    return *this;
  }

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }

  Dyadic& operator-=(const Dyadic& o) {
    Dyadic neg = o;
    neg.num_ = -neg.num_;
    return *this += neg;
  }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }

  std::strong_ordering operator<=>(const Dyadic& o) const {
    const int e = std::max(exp_, o.exp_);
    __int128 a = static_cast<__int128>(num_) << (e - exp_);
    __int128 b = static_cast<__int128>(o.num_) << (e - o.exp_);
    return a < b ? std::strong_ordering::less
           : a > b ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }
  bool operator==(const Dyadic& o) const { return (*this <=> o) == 0; }

  /// Exact comparison against the fraction p/q (q > 0).
  std::strong_ordering compare_fraction(std::int64_t p, std::int64_t q) const {
    // num / 2^exp  vs  p / q   <=>   num * q  vs  p << exp
    __int128 lhs = static_cast<__int128>(num_) * q;
    __int128 rhs = static_cast<__int128>(p) << exp_;
    return lhs < rhs ? std::strong_ordering::less
           : lhs > rhs ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
  }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return std::int64_t{1} << exp_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(denominator());
  }

  std::string to_string() const {
    if (exp_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(denominator());
  }

 private:
  void set_checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("Dyadic arithmetic overflow");
    num_ = static_cast<std::int64_t>(v);
  }

  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --exp_;
    }
  }

  std::int64_t num_ = 0;
  int exp_ = 0;  // denominator 2^exp, exp >= 0
};

/// Exact rational p/q on 64-bit integers, reduced. Enough headroom for every
/// mean and ratio this library reports.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t p, std::int64_t q = 1) : p_(p), q_(q) {
    if (q_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (q_ < 0) {
      p_ = -p_;
      q_ = -q_;
    }
    reduce();
  }

  std::int64_t numerator() const { return p_; }
  std::int64_t denominator() const { return q_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make_checked(static_cast<__int128>(a.p_) * b.q_ +
                            static_cast<__int128>(b.p_) * a.q_,
                        static_cast<__int128>(a.q_) * b.q_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make_checked(static_cast<__int128>(a.p_) * b.q_ -
                            static_cast<__int128>(b.p_) * a.q_,
                        static_cast<__int128>(a.q_) * b.q_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make_checked(static_cast<__int128>(a.p_) * b.p_,
                        static_cast<__int128>(a.q_) * b.q_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.p_ == 0) throw std::invalid_argument("Rational: division by zero");
    return make_checked(static_cast<__int128>(a.p_) * b.q_,
                        static_cast<__int128>(a.q_) * b.p_);
  }

  std::strong_ordering operator<=>(const Rational& o) const {
    __int128 lhs = static_cast<__int128>(p_) * o.q_;
    __int128 rhs = static_cast<__int128>(o.p_) * q_;
    return lhs < rhs ? std::strong_ordering::less
           : lhs > rhs ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
  }
  bool operator==(const Rational& o) const { return p_ == o.p_ && q_ == o.q_; }

  Rational abs() const { return p_ < 0 ? Rational(-p_, q_) : *this; }

  double to_double() const {
    return static_cast<double>(p_) / static_cast<double>(q_);
  }

  std::string to_string() const {
    if (q_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "/" + std::to_string(q_);
  }

 private:
  static Rational make_checked(__int128 p, __int128 q) {
    __int128 g = gcd128(p < 0 ? -p : p, q < 0 ? -q : q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
    if (p > INT64_MAX || p < INT64_MIN || q > INT64_MAX || q < INT64_MIN)
      throw std::overflow_error("Rational arithmetic overflow");
    return Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void reduce() {
    std::int64_t g = std::gcd(p_ < 0 ? -p_ : p_, q_);
    if (g > 1) {
      p_ /= g;
      q_ /= g;
    }
  }

  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

}  // namespace nsg
