#pragma once

// Exact differential algebra for eliminating U_2..U_5 from the ODE form of
// the tau recurrence and deriving the fifth-order identity for s^2 U.
//
// Polynomials live in Q[s, 1/s, U_0, ..., U_5] where U_i stands for the i-th
// s-derivative of U. Monomials are ordered by (s exponent, then U exponents
// lexicographically), which fixes the text dump order.

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tgmaps/errors.hpp"
#include "tgmaps/rational.hpp"
#include "tgmaps/series.hpp"

namespace tgmaps {

inline constexpr int kNumU = 6;

struct DiffMonomial {
  int s_exp = 0;
  std::array<std::uint8_t, kNumU> u{};

  friend auto operator<=>(const DiffMonomial&, const DiffMonomial&) = default;

  int u_degree() const {
    int d = 0;
    for (auto e : u) d += e;
    return d;
  }
  bool is_pure_s() const { return u_degree() == 0; }
};

class DiffPoly {
 public:
  static constexpr int kMinSExp = -12;
  static constexpr int kMaxSExp = 12;
  static constexpr int kMaxUDegree = 16;

  DiffPoly() = default;

  static DiffPoly constant(const Rational& c) { return term(c, 0); }

  /// c * s^k * U_i (i = -1 means no U factor).
  static DiffPoly term(const Rational& c, int s_exp, int u_index = -1, int u_power = 1) {
    DiffMonomial m;
    m.s_exp = s_exp;
    if (u_index >= 0) m.u.at(u_index) = static_cast<std::uint8_t>(u_power);
    DiffPoly p;
    p.add_term(m, c);
    return p;
  }

  static DiffPoly u(int i) { return term(1, 0, i); }
  static DiffPoly s(int k = 1) { return term(1, k); }

  const std::map<DiffMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const DiffMonomial& m, const Rational& c) {
    if (c.is_zero()) return;
    if (m.s_exp < kMinSExp || m.s_exp > kMaxSExp)
      throw BoundError("DiffPoly: Laurent exponent " + std::to_string(m.s_exp) + " outside [-12, 12]");
    if (m.u_degree() > kMaxUDegree) throw BoundError("DiffPoly: U-degree bound exceeded");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffPoly& operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  DiffPoly& operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  DiffPoly& operator*=(const Rational& k) {
    if (k.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
  }

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(DiffPoly a, const Rational& k) { return a *= k; }
  friend DiffPoly operator*(const Rational& k, DiffPoly a) { return a *= k; }
  DiffPoly operator-() const { return *this * Rational(-1); }

  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        DiffMonomial m;
        m.s_exp = ma.s_exp + mb.s_exp;
        for (int i = 0; i < kNumU; ++i) {
          const int e = ma.u[i] + mb.u[i];
          if (e > 255) throw BoundError("DiffPoly: exponent overflow");
          m.u[i] = static_cast<std::uint8_t>(e);
        }
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

  DiffPoly pow(unsigned k) const {
    DiffPoly r = constant(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  bool uses(int i) const {
    for (const auto& [m, c] : terms_)
      if (m.u[i] != 0) return true;
    return false;
  }

  int degree_in(int i) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.u[i]));
    return d;
  }

  /// The coefficient of U_i^k, as a polynomial free of U_i.
  DiffPoly coefficient_of(int i, int k) const {
    DiffPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.u[i] != k) continue;
      DiffMonomial mm = m;
      mm.u[i] = 0;
      r.add_term(mm, c);
    }
    return r;
  }

  /// d/ds: power rule on s (negative exponents included), chain rule U_i -> U_{i+1}.
  DiffPoly derive() const {
    DiffPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.u[kNumU - 1] != 0)
        throw StructureError("DiffPoly::derive: input uses U_5; derivative would need U_6");
      if (m.s_exp != 0) {
        DiffMonomial d = m;
        d.s_exp -= 1;
        r.add_term(d, c * Rational(m.s_exp));
      }
      for (int i = 0; i + 1 < kNumU; ++i) {
        if (m.u[i] == 0) continue;
        DiffMonomial d = m;
        d.u[i] -= 1;
        d.u[i + 1] += 1;
        r.add_term(d, c * Rational(static_cast<long>(m.u[i])));
      }
    }
    return r;
  }

  /// theta = s d/ds.
  DiffPoly theta() const { return s(1) * derive(); }

  /// Replaces every occurrence of U_i by `value`.
  DiffPoly substitute(int i, const DiffPoly& value) const {
    if (!uses(i)) return *this;
    std::vector<DiffPoly> powers{constant(1)};
    DiffPoly r;
    for (const auto& [m, c] : terms_) {
      const int e = m.u[i];
      while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
      DiffMonomial rest = m;
      rest.u[i] = 0;
      DiffPoly base;
      base.add_term(rest, c);
      r += base * powers[e];
    }
    return r;
  }

  /// One term per line, "c * s^a * U0^e0 * ...", in monomial order.
  std::string str() const {
    if (terms_.empty()) return "0\n";
    std::ostringstream os;
    for (const auto& [m, c] : terms_) {
      os << c.str();
      if (m.s_exp != 0) os << " * s^" << m.s_exp;
      for (int i = 0; i < kNumU; ++i)
        if (m.u[i] != 0) os << " * U" << i << "^" << static_cast<int>(m.u[i]);
      os << '\n';
    }
    return os.str();
  }

 private:
  std::map<DiffMonomial, Rational> terms_;
};

/// Laurent series sum_{e >= val} c_e s^e, known for exponents < val + size.
struct LaurentSeries {
  int val = 0;
  std::vector<Rational> c;

  int precision() const { return val + static_cast<int>(c.size()); }

  static LaurentSeries from(const TruncatedSeries& t) { return {0, t.coeffs()}; }

  LaurentSeries derivative() const {
    LaurentSeries r{val - 1, {}};
    for (std::size_t i = 0; i < c.size(); ++i) r.c.push_back(c[i] * Rational(val + static_cast<long>(i)));
    // exponent val+i -> val+i-1; precision drops by one with the index shift.
    return r;
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const int prec = std::min(a.val + b.precision(), b.val + a.precision());
    LaurentSeries r{a.val + b.val, {}};
    const int n = std::max(0, prec - r.val);
    r.c.assign(n, Rational());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c.size() && static_cast<int>(i + j) < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }

  /// Coefficients known and nonzero; empty when the series is zero to its precision.
  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }
};

/// Substitutes U_i := i-th derivative of `u` and sums, tracking precision.
inline LaurentSeries evaluate(const DiffPoly& p, const TruncatedSeries& u) {
  std::array<LaurentSeries, kNumU> d;
  d[0] = LaurentSeries::from(u);
  for (int i = 1; i < kNumU; ++i) d[i] = d[i - 1].derivative();

  int prec = 1 << 20;
  std::vector<LaurentSeries> parts;
  for (const auto& [m, c] : p.terms()) {
    LaurentSeries t{m.s_exp, {c}};
    t.c.resize(1 << 10);  // s^a * c is exact; precision is set by the U factors
    for (int i = 0; i < kNumU; ++i)
      for (int k = 0; k < m.u[i]; ++k) t = t * d[i];
    if (m.is_pure_s()) t.c.resize(0);
    prec = std::min(prec, m.is_pure_s() ? prec : t.precision());
    parts.push_back(std::move(t));
  }
  // pure-s terms contribute exactly; give them the common precision.
  int lo = 0;
  for (const auto& [m, c] : p.terms()) lo = std::min(lo, m.s_exp);
  for (const auto& t : parts) lo = std::min(lo, t.val);
  if (prec == (1 << 20)) prec = lo + 64;
  LaurentSeries sum{lo, std::vector<Rational>(std::max(0, prec - lo))};
  std::size_t k = 0;
  for (const auto& [m, c] : p.terms()) {
    const auto& t = parts[k++];
    if (m.is_pure_s()) {
      if (m.s_exp < prec) sum.c[m.s_exp - lo] += c;
      continue;
    }
    for (std::size_t i = 0; i < t.c.size(); ++i) {
      const int e = t.val + static_cast<int>(i);
      if (e >= prec) break;
      sum.c[e - lo] += t.c[i];
    }
  }
  return sum;
}

/// E_0 = U - s/3 - U^2/2 - (s/3)(5 theta + 1)(5 theta - 1) U, with
/// (5 theta + 1)(5 theta - 1) U = 25 s U_1 + 25 s^2 U_2 - U_0.
inline DiffPoly build_e0() {
  DiffPoly e = DiffPoly::u(0);
  e -= DiffPoly::term(Rational(1, 3), 1);
  e -= DiffPoly::term(Rational(1, 2), 0, 0, 2);
  DiffPoly inner = DiffPoly::term(25, 1, 1) + DiffPoly::term(25, 2, 2) - DiffPoly::u(0);
  e -= DiffPoly::term(Rational(1, 3), 1) * inner;
  return e;
}

/// Solved expressions U_2..U_5 in terms of s^(+-1), U_0, U_1.
struct TriangularSolution {
  std::array<DiffPoly, 4> equations;  // E_0..E_3 as built
  std::array<DiffPoly, 4> u;          // u[k] is U_{k+2}
};

/// Solves E_i (i = 0..3) for U_{i+2} after substituting the earlier solutions.
/// Each step must be linear in U_{i+2} with a single-monomial coefficient.
inline TriangularSolution triangular_solve() {
  TriangularSolution sol;
  sol.equations[0] = build_e0();
  for (int i = 1; i < 4; ++i) sol.equations[i] = sol.equations[i - 1].derive();

  for (int i = 0; i < 4; ++i) {
    const int target = i + 2;
    DiffPoly p = sol.equations[i];
    for (int j = 2; j < target; ++j) p = p.substitute(j, sol.u[j - 2]);
    for (int j = target + 1; j < kNumU; ++j)
      if (p.uses(j)) throw StructureError("triangular_solve: E_" + std::to_string(i) + " involves U_" + std::to_string(j));
    if (p.degree_in(target) != 1)
      throw StructureError("triangular_solve: E_" + std::to_string(i) + " is not linear in U_" + std::to_string(target));
    const DiffPoly lead = p.coefficient_of(target, 1);
    if (lead.size() != 1 || !lead.terms().begin()->first.is_pure_s())
      throw StructureError("triangular_solve: coefficient of U_" + std::to_string(target) + " is not a monomial in s");
    const auto& [lm, lc] = *lead.terms().begin();
    const DiffPoly rest = p.coefficient_of(target, 0);
    sol.u[i] = rest * DiffPoly::term(-Rational(1) / lc, -lm.s_exp);
  }
  return sol;
}

/// Same expressions obtained by differentiating the solved U_2 and
/// re-substituting, instead of solving each E_i.
inline std::array<DiffPoly, 4> solve_by_differentiation() {
  const auto base = triangular_solve();
  std::array<DiffPoly, 4> out;
  out[0] = base.u[0];
  for (int k = 1; k < 4; ++k) out[k] = out[k - 1].derive().substitute(2, out[0]);
  return out;
}

/// Applies the falling-by-2 product (5 theta - 3)...(5 theta - 11).
inline DiffPoly apply_falling_five(const DiffPoly& p) {
  DiffPoly r = p;
  for (const long c : {11L, 9L, 7L, 5L, 3L}) r = r.theta() * Rational(5) - r * Rational(c);
  return r;
}

struct IdentityDerivation {
  DiffPoly lhs_linear;       // 4/15 (5 theta - 3)_((5)) (s^2 U) in U_0..U_5
  DiffPoly lhs_substituted;  // after eliminating U_2..U_5
  DiffPoly rhs;              // right-hand side in U_0, U_1
  DiffPoly residual;         // lhs_substituted - rhs; zero when the identity holds
  TriangularSolution solution;
};

inline DiffPoly eliminate_rhs() {
  const DiffPoly u0 = DiffPoly::u(0);
  const DiffPoly nonlinear = DiffPoly::term(6, 0, 0, 2) - DiffPoly::term(2, 0, 0, 3);
  DiffPoly rhs = -(nonlinear.theta() * Rational(5) - nonlinear * Rational(3));
  const DiffPoly shifted = u0 - DiffPoly::term(Rational(1, 3), 1);
  rhs += (shifted.theta() - shifted) * Rational(12);
  rhs -= DiffPoly::term(28, 2);
  return rhs;
}

inline IdentityDerivation derive_rhs_identity() {
  IdentityDerivation d;
  d.solution = triangular_solve();
  d.lhs_linear = apply_falling_five(DiffPoly::term(1, 2, 0)) * Rational(4, 15);
  DiffPoly lhs = d.lhs_linear;
  for (int j = 2; j < kNumU; ++j) lhs = lhs.substitute(j, d.solution.u[j - 2]);
  d.lhs_substituted = lhs;
  d.rhs = eliminate_rhs();
  d.residual = d.lhs_substituted - d.rhs;
  return d;
}

}  // namespace tgmaps
