#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qsc/exponents.hpp"
#include "qsc/numeric.hpp"
#include "qsc/schur_weyl.hpp"
#include "qsc/spectrum.hpp"

namespace qsc {

/// Exact finite-n evaluation of the universal Schur-Weyl code at one (R, n).
struct CodeEvaluation {
  int n = 0;
  double R = 0.0;
  double R_n = 0.0;          // adjusted rate R - (4d/n) ln(n+d)
  double log_dim_K = kNegInf;
  double visible_error = 1.0;      // 1 - Tr P rho^{tensor n}, exact
  double blind_error_upper = 1.0;  // 1 - (Tr P rho^{tensor n})^2, exact bound
  double blind_error_doubled = 2.0;
  double fidelity_lower = 0.0;     // 1 - visible_error
  double bound_12_7 = kPosInf;
  double bound_12_8 = kPosInf;
  double bound_12_9 = 0.0;
  bool degenerate = false;         // R_n < 0: the code subspace is empty
};

/// R_n = R - (4d/n) ln(n+d). Negative for small n (degenerate code).
inline double adjusted_rate(double R, int n, int d) {
  if (n < 1) throw std::invalid_argument("adjusted_rate: n >= 1");
  return R - (4.0 * d / n) * std::log(double(n + d));
}

/// ln dim of the code subspace: sum of dim V * dim U over blocks with
/// H(lambda/n) <= R_eff. Returns -inf for an empty code.
inline double code_subspace_log_dim(double R_eff, int n, int d,
                                    std::int64_t budget = 2'000'000) {
  if (R_eff < 0.0) return kNegInf;
  BigInt total = 0;
  for (const auto& lam : enumerate_young(n, d, budget))
    if (entropy(lam.normalized()) <= R_eff)
      total += dim_sym_group_irrep(lam) * dim_su_d_irrep(lam, d);
  return total == 0 ? kNegInf : detail::log_big(total);
}

/// Exact visible error 1 - Tr P_{R_n,n} rho^{tensor n}; depends only on the
/// spectrum. use_adjusted_rate=false evaluates the raw-R code (diagnostics).
inline double visible_error_exact(const Spectrum& a, double R, int n,
                                  std::int64_t budget = 2'000'000,
                                  bool use_adjusted_rate = true) {
  double R_eff = use_adjusted_rate ? adjusted_rate(R, n, a.d()) : R;
  if (R_eff < 0.0)
    throw std::domain_error("visible_error_exact: degenerate code (R_n < 0)");
  double log_q = region_trace_log(
      n, a, [R_eff](const std::vector<double>& type) {
        return entropy(type) <= R_eff;
      },
      budget);
  return std::clamp(1.0 - std::exp(log_q), 0.0, 1.0);
}

/// Blind-error bounds from the Lemma 3 proof chain: the tight intermediate
/// 1 - (Tr P rho^{tensor n})^2 and the doubled visible error.
struct BlindErrorBound {
  double intermediate;
  double doubled;
};

inline BlindErrorBound blind_error_upper_exact(const Spectrum& a, double R, int n,
                                               std::int64_t budget = 2'000'000,
                                               bool use_adjusted_rate = true) {
  double eps = visible_error_exact(a, R, n, budget, use_adjusted_rate);
  double q = 1.0 - eps;
  return {1.0 - q * q, 2.0 * eps};
}

struct Lemma3Bounds {
  double bound_12_7;
  double bound_12_8;
  double bound_12_9;
};

/// The three displayed finite-n bounds. Values above 1 are returned as-is
/// (valid but vacuous at small n).
inline Lemma3Bounds lemma3_bounds(const Spectrum& a, double R, int n,
                                  std::int64_t budget = 2'000'000) {
  int d = a.d();
  double R_n = adjusted_rate(R, n, d);
  double min_div_geq =
      R_n <= 0.0 ? 0.0
                 : error_exponent(a, std::min(R_n, std::log(double(d)) - 1e-12))
                       .value;
  double log_12_7 = 4.0 * d * std::log(double(n + d)) - n * min_div_geq;
  // discrete minimum over enumerated Young indices with H(lambda/n) <= R_n
  double min_div_discrete = kPosInf;
  if (R_n >= 0.0) {
    for (const auto& lam : enumerate_young(n, d, budget))
      if (entropy(lam.normalized()) <= R_n)
        min_div_discrete =
            std::min(min_div_discrete, kl_divergence(lam.normalized(), a));
  }
  double log_12_9 = min_div_discrete == kPosInf
                        ? kNegInf
                        : -0.5 * d * (d + 1) * std::log(double(n + d)) -
                              n * min_div_discrete;
  return {std::exp(log_12_7), 2.0 * std::exp(log_12_7), std::exp(log_12_9)};
}

/// Full per-(R, n) record.
inline CodeEvaluation evaluate_code(const Spectrum& a, double R, int n,
                                    std::int64_t budget = 2'000'000) {
  CodeEvaluation ev;
  ev.n = n;
  ev.R = R;
  ev.R_n = adjusted_rate(R, n, a.d());
  auto b = lemma3_bounds(a, R, n, budget);
  ev.bound_12_7 = b.bound_12_7;
  ev.bound_12_8 = b.bound_12_8;
  ev.bound_12_9 = b.bound_12_9;
  if (ev.R_n < 0.0) {
    ev.degenerate = true;  // empty code: error 1, fidelity 0
    return ev;
  }
  ev.log_dim_K = code_subspace_log_dim(ev.R_n, n, a.d(), budget);
  ev.visible_error = visible_error_exact(a, R, n, budget);
  double q = 1.0 - ev.visible_error;
  ev.blind_error_upper = 1.0 - q * q;
  ev.blind_error_doubled = 2.0 * ev.visible_error;
  ev.fidelity_lower = q;
  ev.degenerate = false;
  return ev;
}

struct ConvergenceRow {
  int n;
  double R_n;
  double visible_error;
  double error_exponent_empirical;     // -(1/n) ln eps
  double fidelity_exponent_empirical;  // -(1/n) ln (1 - eps)
  double error_exponent_limit;
  double fidelity_exponent_limit;
  double error_residual;     // |empirical - limit|
  double fidelity_residual;
  bool degenerate;
};

/// Per-n empirical exponents of the exact code errors against the limiting
/// exponents of the rate-R code family.
inline std::vector<ConvergenceRow> convergence_report(
    const Spectrum& a, double R, const std::vector<int>& n_values,
    std::int64_t budget = 2'000'000) {
  double err_lim = error_exponent(a, R).value;
  double fid_lim = fidelity_exponent(a, R).value;
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    ConvergenceRow row{};
    row.n = n;
    row.R_n = adjusted_rate(R, n, a.d());
    row.error_exponent_limit = err_lim;
    row.fidelity_exponent_limit = fid_lim;
    if (row.R_n < 0.0) {
      row.degenerate = true;
      row.visible_error = 1.0;
      row.error_exponent_empirical = 0.0;
      row.fidelity_exponent_empirical = kPosInf;
    } else {
      double R_eff = row.R_n;
      double log_q = region_trace_log(
          n, a,
          [R_eff](const std::vector<double>& t) { return entropy(t) <= R_eff; },
          budget);
      double q = std::exp(log_q);
      row.visible_error = std::clamp(1.0 - q, 0.0, 1.0);
      // ln eps from the complement in log space when eps is tiny
      double log_eps = row.visible_error > 1e-8
                           ? std::log(row.visible_error)
                           : std::log(-std::expm1(log_q));
      row.error_exponent_empirical = -log_eps / n;
      row.fidelity_exponent_empirical = -log_q / n;
    }
    row.error_residual =
        std::abs(row.error_exponent_empirical - row.error_exponent_limit);
    row.fidelity_residual =
        std::abs(row.fidelity_exponent_empirical - row.fidelity_exponent_limit);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qsc
