#pragma once

// Exact rational arithmetic backed by GMP.
//
// Values are kept in lowest terms with a positive denominator after every
// operation, so structural equality is value equality.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tgmaps {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}                      // NOLINT(implicit)
  Rational(int n) : v_(static_cast<long>(n)) {}    // NOLINT(implicit)
  Rational(const BigInt& n) : v_(n) {}             // NOLINT(implicit)
  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  /// Parses "p/q" or "p".
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    return Rational(num, den);
  }

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  double to_double() const { return v_.get_d(); }

  /// Always "p/q", including integers ("3/1") so readers can rely on one shape.
  std::string str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { Rational r; r.v_ = -v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  /// 2^e for any integer e.
  static Rational pow2(long e) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(BigInt(1), p) : Rational(p);
  }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt double_factorial_odd(unsigned long n) {  // (2n-1)!!
  BigInt r = 1;
  for (unsigned long i = 3; i < 2 * n; i += 2) r *= i;
  return r;
}

inline BigInt catalan(unsigned long n) { return binomial(2 * n, n) / (n + 1); }

inline BigInt ipow(long base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), BigInt(base).get_mpz_t(), e);
  return r;
}

}  // namespace tgmaps
