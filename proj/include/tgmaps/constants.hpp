#pragma once

// The tau_g sequence, its conversion to the map-asymptotic constants t_g, and
// the pair-moment that the recurrence implies for two-point Voronoi cells.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tgmaps/errors.hpp"
#include "tgmaps/rational.hpp"

namespace tgmaps {

/// coeff * pi^(sqrt_pi_exp / 2).
struct SqrtPiRational {
  Rational coeff;
  int sqrt_pi_exp = 0;

  friend bool operator==(const SqrtPiRational&, const SqrtPiRational&) = default;

  double to_double() const {
    return coeff.to_double() * std::pow(std::numbers::pi, 0.5 * sqrt_pi_exp);
  }
};

/// tau_0..tau_{g_max}; tau_0 = -1 and
/// tau_{g+1} = (5g+1)(5g-1)/3 tau_g + 1/2 sum_{g1=1}^{g} tau_{g1} tau_{g+1-g1}.
inline std::vector<Rational> tau_sequence(unsigned g_max) {
  std::vector<Rational> tau;
  tau.reserve(g_max + 1);
  tau.emplace_back(-1);
  for (unsigned g = 0; g < g_max; ++g) {
    const long a = 5L * g + 1, b = 5L * g - 1;
    Rational next = Rational(a * b, 3) * tau[g];
    Rational conv;
    for (unsigned g1 = 1; g1 <= g; ++g1) conv += tau[g1] * tau[g + 1 - g1];
    next += conv / 2;
    tau.push_back(std::move(next));
  }
  return tau;
}

/// Gamma(two_k / 2), exact. Half-integer arguments carry a factor sqrt(pi)
/// (sqrt_pi_exp = +1).
inline SqrtPiRational gamma_half(long two_k) {
  if (two_k % 2 == 0) {
    const long m = two_k / 2;
    if (m <= 0) throw PoleError("gamma_half: pole at " + std::to_string(m));
    return {Rational(factorial(static_cast<unsigned long>(m - 1))), 0};
  }
  // Start from Gamma(1/2) = sqrt(pi) and walk by x -> x +/- 1 in steps of 2/2.
  Rational c(1);
  if (two_k > 1) {
    for (long t = 1; t < two_k; t += 2) c *= Rational(t, 2);
  } else {
    for (long t = 1; t > two_k; t -= 2) c /= Rational(t - 2, 2);
  }
  return {c, 1};
}

/// t_g = tau_g / (2^(5g-2) Gamma((5g-1)/2)).
inline SqrtPiRational t_constant(unsigned g, const std::vector<Rational>& tau) {
  const SqrtPiRational gam = gamma_half(5L * g - 1);
  const Rational denom = Rational::pow2(5L * g - 2) * gam.coeff;
  return {tau.at(g) / denom, -gam.sqrt_pi_exp};
}

inline SqrtPiRational t_constant(unsigned g) { return t_constant(g, tau_sequence(g)); }

/// (tau_{g+1} - 1/2 sum tau_{g1} tau_{g+1-g1}) / (2(5g+1)(5g-1) tau_g): the value
/// E[X_g(1-X_g)] forced by comparing the recurrence with the two-point cell
/// decomposition.
inline Rational implied_pair_moment(unsigned g, const std::vector<Rational>& tau) {
  Rational conv;
  for (unsigned g1 = 1; g1 <= g; ++g1) conv += tau.at(g1) * tau.at(g + 1 - g1);
  const long a = 5L * g + 1, b = 5L * g - 1;
  return (tau.at(g + 1) - conv / 2) / (Rational(2 * a * b) * tau.at(g));
}

inline Rational implied_pair_moment(unsigned g) {
  return implied_pair_moment(g, tau_sequence(g + 1));
}

}  // namespace tgmaps
