#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsc/numeric.hpp"
#include "qsc/spectrum.hpp"

namespace qsc {

enum class Characterization { psi_form, divergence_form, tilted_closed_form };
enum class Regime { R_below_logk, R_between_logk_and_H, R_between_H_and_logd };
enum class EntropyConstraint { H_at_least_R, H_at_most_R };

struct ExponentResult {
  double value = 0.0;
  Characterization characterization = Characterization::tilted_closed_form;
  Regime regime = Regime::R_between_logk_and_H;
  std::optional<double> s_star;                 // optimizer of the psi / tilted forms
  std::optional<std::vector<double>> b_star;    // optimizer of the divergence form
};

namespace detail {

inline bool is_degenerate(const Spectrum& a) {
  return top_multiplicity(a) == a.d();
}

/// -psi'(s), the inverse map of s(S). Monotone decreasing in s.
inline double neg_psi_prime(const Spectrum& a, double s) {
  return -psi_derivatives(a, s).first;
}

/// H(tilted(a, s)) = -s psi'(s) + psi(s). Monotone decreasing in s.
inline double tilted_entropy(const Spectrum& a, double s) {
  return s * neg_psi_prime(a, s) + renyi_psi(a, s);
}

/// Solve H(tilted(a, s)) = R for s; requires ln k < R < ln d.
inline double solve_s_for_rate(const Spectrum& a, double R) {
  double hi = 1.0;
  while (tilted_entropy(a, hi) > R) {
    hi *= 2.0;
    if (hi > 1e6)
      throw std::domain_error("solve_s_for_rate: R too close to log k");
  }
  auto f = [&](double s) { return tilted_entropy(a, s) - R; };
  return bisect_decreasing(f, 0.0, hi, 1e-14 * std::max(1.0, hi));
}

inline void check_rate(const Spectrum& a, double R) {
  if (R < 0.0 || R >= std::log(double(a.d())) - 1e-15)
    throw std::domain_error("rate must satisfy 0 <= R < log d");
}

inline Regime classify_rate(const Spectrum& a, double R) {
  double H = entropy(a);
  double logk = std::log(double(top_multiplicity(a)));
  if (R <= logk + 1e-15) return Regime::R_below_logk;
  if (R <= H) return Regime::R_between_logk_and_H;
  return Regime::R_between_H_and_logd;
}

/// Distribution supported on the top-k block of a with entropy exactly R.
/// One-parameter family (t, u, ..., u) with t >= u, found by bisection.
inline std::vector<double> top_block_distribution(const Spectrum& a, double R) {
  int k = top_multiplicity(a);
  std::vector<double> b(std::size_t(a.d()), 0.0);
  if (k == 1 || R <= 0.0) {
    b[0] = 1.0;
    return b;
  }
  auto fill = [&](double t) {
    b[0] = t;
    for (int i = 1; i < k; ++i) b[std::size_t(i)] = (1.0 - t) / (k - 1);
  };
  auto h = [&](double t) {
    fill(t);
    return entropy(b) - R;  // decreasing in t on [1/k, 1]
  };
  fill(bisect_decreasing(h, 1.0 / k, 1.0 - 1e-16));
  return b;
}

}  // namespace detail

/// Unique s >= 0 with S = -psi'(s); defined for -ln a_1 < S <= -psi'(0).
inline double s_of_S(const Spectrum& a, double S) {
  if (detail::is_degenerate(a))
    throw std::domain_error("s_of_S: undefined for a degenerate (uniform) spectrum");
  double top = detail::neg_psi_prime(a, 0.0);
  if (S > top + 1e-12 || S <= -std::log(a[0]))
    throw std::domain_error("s_of_S: S outside (-log a_1, -psi'(0)]");
  if (S >= top) return 0.0;
  double hi = 1.0;
  while (detail::neg_psi_prime(a, hi) > S + 1e-15) {
    hi *= 2.0;
    if (hi > 1e6) throw std::domain_error("s_of_S: S too close to -log a_1");
  }
  auto f = [&](double s) { return detail::neg_psi_prime(a, s) - S; };
  return bisect_decreasing(f, 0.0, hi, 1e-14 * std::max(1.0, hi));
}

/// Unique S_R solving R = s(S_R) S_R + psi(s(S_R)); requires ln k < R < ln d.
inline double S_of_R(const Spectrum& a, double R) {
  if (detail::is_degenerate(a))
    throw std::domain_error("S_of_R: undefined for a degenerate (uniform) spectrum");
  double logk = std::log(double(top_multiplicity(a)));
  if (R <= logk || R >= std::log(double(a.d())))
    throw std::domain_error("S_of_R: R outside (log k, log d)");
  return detail::neg_psi_prime(a, detail::solve_s_for_rate(a, R));
}

/// Constrained minimizer of D(b || a) over { H(b) >= R } or { H(b) <= R }.
inline std::vector<double> divergence_minimizer(const Spectrum& a, double R,
                                                EntropyConstraint direction) {
  detail::check_rate(a, R);
  double H = entropy(a);
  if (direction == EntropyConstraint::H_at_least_R) {
    if (R <= H || detail::is_degenerate(a)) return a.values();
    return tilted(a, detail::solve_s_for_rate(a, R)).values();
  }
  if (R >= H) return a.values();
  if (!detail::is_degenerate(a) &&
      R > std::log(double(top_multiplicity(a))) + 1e-15)
    return tilted(a, detail::solve_s_for_rate(a, R)).values();
  return detail::top_block_distribution(a, R);
}

/// Error exponent max_{0<s<=1} ((1-s)R - psi(s))/s = min_{H(b)>=R} D(b||a).
inline ExponentResult error_exponent(
    const Spectrum& a, double R,
    Characterization how = Characterization::tilted_closed_form) {
  detail::check_rate(a, R);
  ExponentResult res;
  res.characterization = how;
  res.regime = detail::classify_rate(a, R);
  double H = entropy(a);
  bool zero_regime = (R <= H) || detail::is_degenerate(a);

  switch (how) {
    case Characterization::tilted_closed_form: {
      if (zero_regime) {
        res.value = 0.0;
        res.s_star = 1.0;
      } else {
        double s = detail::solve_s_for_rate(a, R);
        res.value = detail::neg_psi_prime(a, s) - R;
        res.s_star = s;
      }
      break;
    }
    case Characterization::psi_form: {
      if (zero_regime) {
        res.value = 0.0;
        res.s_star = 1.0;
        break;
      }
      auto f = [&](double s) { return ((1.0 - s) * R - renyi_psi(a, s)) / s; };
      double s = golden_max(f, 1e-12, 1.0);
      res.value = std::max(f(s), 0.0);
      res.s_star = s;
      break;
    }
    case Characterization::divergence_form: {
      auto b = divergence_minimizer(a, R, EntropyConstraint::H_at_least_R);
      res.value = kl_divergence(b, a);
      res.b_star = std::move(b);
      break;
    }
  }
  return res;
}

/// Fidelity exponent sup_{s>=1} ((1-s)R - psi(s))/s = min_{H(b)<=R} D(b||a).
inline ExponentResult fidelity_exponent(
    const Spectrum& a, double R,
    Characterization how = Characterization::tilted_closed_form) {
  detail::check_rate(a, R);
  ExponentResult res;
  res.characterization = how;
  res.regime = detail::classify_rate(a, R);
  double H = entropy(a);

  if (R >= H) {  // includes the degenerate spectrum, where H = log d > R
    res.value = 0.0;
    res.s_star = 1.0;
    if (how == Characterization::divergence_form) res.b_star = a.values();
    return res;
  }
  if (res.regime == Regime::R_below_logk || detail::is_degenerate(a)) {
    // sup over s is the limit s -> infinity; the value is analytic.
    res.value = -std::log(a[0]) - R;
    if (how == Characterization::divergence_form)
      res.b_star = detail::top_block_distribution(a, R);
    return res;
  }

  switch (how) {
    case Characterization::tilted_closed_form: {
      double s = detail::solve_s_for_rate(a, R);
      res.value = detail::neg_psi_prime(a, s) - R;
      res.s_star = s;
      break;
    }
    case Characterization::psi_form: {
      auto f = [&](double s) { return ((1.0 - s) * R - renyi_psi(a, s)) / s; };
      double hi = 2.0;
      while (f(2.0 * hi) > f(hi)) {
        hi *= 2.0;
        if (hi > 1e8) break;
      }
      double s = golden_max(f, 1.0, 2.0 * hi);
      res.value = std::max(f(s), 0.0);
      res.s_star = s;
      break;
    }
    case Characterization::divergence_form: {
      auto b = divergence_minimizer(a, R, EntropyConstraint::H_at_most_R);
      res.value = kl_divergence(b, a);
      res.b_star = std::move(b);
      break;
    }
  }
  return res;
}

/// eta(S): asymptotic lower-tail exponent of the spectrum of the n-fold
/// average state at threshold e^{-nS}. For S above -psi'(0) the exact value
/// is not pinned down; the boundary value eta(-psi'(0)) (a lower bound) is
/// returned there.
inline double eta(const Spectrum& a, double S) {
  if (S < 0.0) throw std::domain_error("eta: S must be >= 0");
  if (detail::is_degenerate(a)) return 0.0;
  double H = entropy(a);
  if (S < H) return 0.0;
  double top = detail::neg_psi_prime(a, 0.0);
  if (S > top) return top - std::log(double(a.d()));  // eta(-psi'(0))
  double s = s_of_S(a, S);
  return (1.0 - s) * S - renyi_psi(a, s);
}

}  // namespace qsc
