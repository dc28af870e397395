#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "chev/errors.hpp"

namespace chev {

// Exact rational number, always stored reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : v_(static_cast<long>(v)) {}  // NOLINT(implicit)
  Rational(long num, long den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    v_ = mpq_class(mpz_class(num), mpz_class(den));
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(std::move(q));
  }

  // Closest-rational recovery is not attempted; the double is converted exactly.
  static Rational from_double(double x) { return Rational(mpq_class(x)); }

  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidArgument("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

// a + b*sqrt(D) with rational a, b; D square-free and positive.
template <int D>
class QuadExt {
  static_assert(D > 1, "QuadExt needs a non-trivial square-free radicand");

 public:
  static constexpr int radicand = D;

  QuadExt() = default;
  template <std::integral I>
  QuadExt(I v) : a_(v) {}  // NOLINT(implicit)
  QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT(implicit)
  QuadExt(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadExt sqrt_d() { return QuadExt(Rational(0), Rational(1)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  QuadExt conjugate() const { return QuadExt(a_, -b_); }
  // Field norm a^2 - D b^2; nonzero for nonzero elements since D is not a square.
  Rational norm() const { return a_ * a_ - Rational(D) * b_ * b_; }

  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with D b^2
    Rational lhs = a_ * a_, rhs = Rational(D) * b_ * b_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(double(D)); }

  std::string str() const {
    if (b_.is_zero()) return a_.str();
    std::string s;
    if (!a_.is_zero()) s = a_.str() + (b_.sign() > 0 ? "+" : "");
    if (b_ == Rational(1)) return s + "sqrt(" + std::to_string(D) + ")";
    if (b_ == Rational(-1)) return s + "-sqrt(" + std::to_string(D) + ")";
    return s + b_.str() + "*sqrt(" + std::to_string(D) + ")";
  }

  QuadExt& operator+=(const QuadExt& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QuadExt& operator-=(const QuadExt& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QuadExt& operator*=(const QuadExt& o) {
    if (o.b_.is_zero()) {
      a_ *= o.a_;
      b_ *= o.a_;
      return *this;
    }
    Rational na = a_ * o.a_ + Rational(D) * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) {
    if (o.is_zero()) throw InvalidArgument("division by zero");
    if (o.b_.is_zero()) {
      a_ /= o.a_;
      b_ /= o.a_;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }
  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  QuadExt operator-() const { return QuadExt(-a_, -b_); }

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }
  friend std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.str(); }

 private:
  Rational a_{0};
  Rational b_{0};
};

using Sqrt3Field = QuadExt<3>;
using Sqrt5Field = QuadExt<5>;

// Absolute cut-off below which a binary64 coefficient is treated as zero.
inline constexpr double kNumericZero = 1e-12;
// Comparison tolerance of the numeric backend on unit-scale data.
inline constexpr double kNumericTol = 1e-9;

template <class F>
struct field_traits;

template <>
struct field_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr int radicand = 1;
  static constexpr const char* tag = "rational";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool near(const Rational& x, const Rational& y) { return x == y; }
  static int sign(const Rational& x) { return x.sign(); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static std::string str(const Rational& x) { return x.str(); }
  // Total order used for hashing-free containers; need not respect the field order.
  static bool key_less(const Rational& x, const Rational& y) { return x < y; }
  static std::optional<Rational> sqrt_int(long m) {
    if (m < 0) return std::nullopt;
    mpz_class z(m);
    if (!mpz_perfect_square_p(z.get_mpz_t())) return std::nullopt;
    return Rational(mpq_class(mpz_class(sqrt(z))));
  }
};

template <int D>
struct field_traits<QuadExt<D>> {
  using F = QuadExt<D>;
  static constexpr bool exact = true;
  static constexpr int radicand = D;
  static constexpr const char* tag = "quadratic";
  static F zero() { return F(0); }
  static F one() { return F(1); }
  static F from_rational(const Rational& r) { return F(r); }
  static bool is_zero(const F& x) { return x.is_zero(); }
  static bool near(const F& x, const F& y) { return x == y; }
  static int sign(const F& x) { return x.sign(); }
  static double to_double(const F& x) { return x.to_double(); }
  static std::string str(const F& x) { return x.str(); }
  static bool key_less(const F& x, const F& y) {
    if (x.a() != y.a()) return x.a() < y.a();
    return x.b() < y.b();
  }
  // sqrt(m) for m = q^2 or m = D q^2.
  static std::optional<F> sqrt_int(long m) {
    if (auto r = field_traits<Rational>::sqrt_int(m)) return F(*r);
    if (m % D == 0) {
      if (auto r = field_traits<Rational>::sqrt_int(m / D)) return F(Rational(0), *r);
    }
    return std::nullopt;
  }
};

template <>
struct field_traits<double> {
  static constexpr bool exact = false;
  static constexpr int radicand = 0;
  static constexpr const char* tag = "numeric";
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_rational(const Rational& r) { return r.to_double(); }
  static bool is_zero(double x) { return std::abs(x) <= kNumericZero; }
  static bool near(double x, double y) {
    double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= kNumericTol * scale;
  }
  static int sign(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }
  static double to_double(double x) { return x; }
  static std::string str(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  static bool key_less(double x, double y) { return x < y; }
  static std::optional<double> sqrt_int(long m) {
    if (m < 0) return std::nullopt;
    return std::sqrt(double(m));
  }
};

// A coefficient field usable by the polynomial and group machinery.
template <class F>
concept Field = requires(F a, F b) {
  { field_traits<F>::exact } -> std::convertible_to<bool>;
  { field_traits<F>::zero() } -> std::same_as<F>;
  { field_traits<F>::is_zero(a) } -> std::same_as<bool>;
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
};

template <Field F>
inline constexpr bool is_exact_v = field_traits<F>::exact;

// Embeds rationals into any field.
template <Field F>
F from_rational(const Rational& r) {
  return field_traits<F>::from_rational(r);
}

template <Field F>
F from_int(long v) {
  return field_traits<F>::from_rational(Rational(v));
}

template <Field F>
F field_pow(F base, unsigned e) {
  F result = field_traits<F>::one();
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

// Integer extended by one infinity, used for degrees (zero polynomial has
// degree -inf) and vanishing orders (zero polynomial has order +inf).
class ExtendedInt {
 public:
  enum class Kind { neg_infinite, finite, pos_infinite };

  constexpr ExtendedInt(long v) : kind_(Kind::finite), value_(v) {}  // NOLINT(implicit)
  static constexpr ExtendedInt pos_infinity() { return ExtendedInt(Kind::pos_infinite); }
  static constexpr ExtendedInt neg_infinity() { return ExtendedInt(Kind::neg_infinite); }

  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_pos_infinite() const { return kind_ == Kind::pos_infinite; }
  constexpr bool is_neg_infinite() const { return kind_ == Kind::neg_infinite; }
  constexpr Kind kind() const { return kind_; }

  // Throws on an infinite value; the sentinels never silently become numbers.
  long value() const {
    if (!is_finite()) throw InvalidArgument("infinite value has no integer representation");
    return value_;
  }

  friend constexpr bool operator==(const ExtendedInt& a, const ExtendedInt& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtendedInt& a, const ExtendedInt& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }
  friend ExtendedInt operator+(const ExtendedInt& a, const ExtendedInt& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedInt(a.value_ + b.value_);
    if ((a.is_pos_infinite() && b.is_neg_infinite()) || (a.is_neg_infinite() && b.is_pos_infinite()))
      throw InvalidArgument("inf - inf is undefined");
    return a.is_finite() ? b : a;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::neg_infinite: return "-inf";
      case Kind::pos_infinite: return "inf";
      default: return std::to_string(value_);
    }
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtendedInt& e) { return os << e.str(); }

 private:
  constexpr explicit ExtendedInt(Kind k) : kind_(k), value_(0) {}
  Kind kind_;
  long value_;
};

using Degree = ExtendedInt;
using Order = ExtendedInt;

}  // namespace chev
