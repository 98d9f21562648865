#pragma once

// Truncated formal power series over Rational, and the series identities
// around the tau recurrence: the quadratic tree equation L0 = 1 + 3z L0^2,
// the ODE form of the recurrence, the fifth-order identity in s^2 U, and
// the coefficient extraction that simplifies the three-point constant.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "tgmaps/constants.hpp"
#include "tgmaps/rational.hpp"

namespace tgmaps {

/// c_0 + c_1 s + ... + c_N s^N  (mod s^(N+1)).
///
/// Binary operations return the minimum of the operand orders; nothing is
/// ever zero-extended past what an operand actually knows.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : c_(order + 1) {}
  explicit TruncatedSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.emplace_back();
  }

  static TruncatedSeries monomial(std::size_t order, std::size_t power, Rational c = 1) {
    TruncatedSeries s(order);
    if (power <= order) s.c_[power] = std::move(c);
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return c_.at(n); }
  Rational& operator[](std::size_t n) { return c_.at(n); }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
  }

  std::optional<std::size_t> first_nonzero() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return i;
    return std::nullopt;
  }

  TruncatedSeries truncated(std::size_t order) const {
    const std::size_t n = std::min(order, this->order());
    return TruncatedSeries(std::vector<Rational>(c_.begin(), c_.begin() + n + 1));
  }

  /// s^k * this, known exactly modulo s^(N+k+1).
  TruncatedSeries shifted(std::size_t k) const {
    TruncatedSeries r(order() + k);
    for (std::size_t i = 0; i <= order(); ++i) r.c_[i + k] = c_[i];
    return r;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    shrink_to(o.order());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    shrink_to(o.order());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  TruncatedSeries& operator*=(const Rational& k) {
    for (auto& x : c_) x *= k;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& k) { return a *= k; }
  friend TruncatedSeries operator*(const Rational& k, TruncatedSeries a) { return a *= k; }
  TruncatedSeries operator-() const { return *this * Rational(-1); }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j <= n; ++j) {
        if (b.c_[j].is_zero()) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  void shrink_to(std::size_t order) {
    if (order < this->order()) c_.resize(order + 1);
  }

  std::vector<Rational> c_;
};

/// One affine factor (a*theta + b) of a theta-operator, theta = s d/ds.
struct ThetaFactor {
  Rational a;
  Rational b;
};

/// Applies prod (a_i theta + b_i). theta acts diagonally (s^n -> n s^n), so
/// the truncation order is preserved exactly.
inline TruncatedSeries theta_apply(const TruncatedSeries& s, const std::vector<ThetaFactor>& factors) {
  TruncatedSeries r = s;
  for (std::size_t n = 0; n <= r.order(); ++n) {
    if (r[n].is_zero()) continue;
    Rational m(1);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) m *= it->a * Rational(static_cast<long>(n)) + it->b;
    r[n] *= m;
  }
  return r;
}

/// (5 theta - 3)(5 theta - 5)(5 theta - 7)(5 theta - 9)(5 theta - 11).
inline std::vector<ThetaFactor> falling_five_factors() {
  return {{5, -3}, {5, -5}, {5, -7}, {5, -9}, {5, -11}};
}

/// L0(z) mod z^(N+1), from L0 = 1 + 3z L0^2.
inline TruncatedSeries l0_series(std::size_t order) {
  std::vector<Rational> c(order + 1);
  c[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc;
    for (std::size_t i = 0; i < n; ++i) acc += c[i] * c[n - 1 - i];
    c[n] = acc * Rational(3);
  }
  return TruncatedSeries(std::move(c));
}

/// U(s) = sum_{g>=1} tau_g s^g mod s^(N+1).
inline TruncatedSeries u_series(std::size_t order) {
  const auto tau = tau_sequence(static_cast<unsigned>(order));
  std::vector<Rational> c(order + 1);
  for (std::size_t g = 1; g <= order; ++g) c[g] = tau[g];
  return TruncatedSeries(std::move(c));
}

/// (1 - 6z L0)^2 - (1 - 12z); zero iff 1 - 6z L0 = sqrt(1 - 12z).
inline TruncatedSeries kernel_check(std::size_t order) {
  const auto l0 = l0_series(order);
  const auto one = TruncatedSeries::monomial(order, 0);
  const auto k = one - l0.shifted(1).truncated(order) * Rational(6);
  auto rhs = one - TruncatedSeries::monomial(order, 1, 12);
  return k * k - rhs;
}

/// U - s/3 - U^2/2 - (s/3)(5 theta + 1)(5 theta - 1) U.
inline TruncatedSeries verify_tau_ode(std::size_t order) {
  const auto u = u_series(order);
  auto r = u - TruncatedSeries::monomial(order, 1, Rational(1, 3)) - (u * u) * Rational(1, 2);
  const auto lin = theta_apply(u, {{5, 1}, {5, -1}}).shifted(1).truncated(order) * Rational(1, 3);
  return r - lin;
}

/// Residual of
///   4/15 (5 theta - 3)_((5)) (s^2 U)
///     = -(5 theta - 3)(6U^2 - 2U^3) + 12 (theta - 1)(U - s/3) - 28 s^2.
inline TruncatedSeries verify_eliminate_identity(std::size_t order) {
  const auto u = u_series(order);
  const auto lhs = theta_apply(u.shifted(2).truncated(order), falling_five_factors()) * Rational(4, 15);
  const auto u2 = u * u;
  const auto nonlinear = u2 * Rational(6) - (u2 * u) * Rational(2);
  auto rhs = -theta_apply(nonlinear, {{5, -3}});
  rhs += theta_apply(u - TruncatedSeries::monomial(order, 1, Rational(1, 3)), {{1, -1}}) * Rational(12);
  rhs -= TruncatedSeries::monomial(order, 2, 28);
  return lhs - rhs;
}

/// The two forms of the case-(iii) constant C' at genus index g.
struct CPrime {
  Rational raw;
  Rational simplified;
};

inline CPrime cprime_check(unsigned g, const std::vector<Rational>& tau) {
  const unsigned top = g + 2;
  Rational pairs, triples;
  for (unsigned a = 1; a < top; ++a) pairs += tau.at(a) * tau.at(top - a);
  for (unsigned a = 1; a < top; ++a)
    for (unsigned b = 1; a + b < top; ++b) triples += tau.at(a) * tau.at(b) * tau.at(top - a - b);
  const long gl = g;
  CPrime out;
  out.raw = Rational(12 * (gl + 1), 5 * gl + 7) * tau.at(top) - (Rational(6) * pairs - Rational(2) * triples);
  out.simplified = Rational(4, 15) * Rational((5 * gl + 5) * (5 * gl + 3)) * Rational((5 * gl + 1) * (5 * gl - 1)) * tau.at(g);
  return out;
}

inline CPrime cprime_check(unsigned g) { return cprime_check(g, tau_sequence(g + 2)); }

}  // namespace tgmaps
