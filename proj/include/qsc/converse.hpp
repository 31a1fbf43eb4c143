#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qsc/exponents.hpp"
#include "qsc/numeric.hpp"
#include "qsc/spectrum.hpp"
#include "qsc/universal_code.hpp"

namespace qsc {

enum class TailSide { geq, lt };

struct TailQuery {
  Spectrum a;
  int n;
  double threshold_log;  // lambda: the projections split at e^lambda
};

namespace detail {

// Eigenvalues of rho^{tensor n} are prod a_i^{m_i} over composition types m
// (unsorted occupation counts), each with multiplicity C(m) = n!/prod m_i!.
template <class Visitor>
void for_each_composition(int n, int d, const Visitor& visit,
                          std::int64_t budget) {
  std::vector<int> m(std::size_t(d), 0);
  std::int64_t count = 0;
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == d - 1) {
      m[std::size_t(pos)] = remaining;
      if (++count > budget)
        throw budget_exceeded("spectral_tail: composition budget exceeded");
      visit(m);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      m[std::size_t(pos)] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, n);
}

inline double composition_log_weight(const std::vector<int>& m,
                                     const Spectrum& a) {
  double lw = log_factorial(std::accumulate(m.begin(), m.end(), 0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    lw -= log_factorial(m[i]);
    lw += m[i] * std::log(a[i]);
  }
  return lw;
}

}  // namespace detail

/// ln Tr rho^{tensor n} { rho^{tensor n} - e^lambda >= 0 } (side geq) or the
/// strict complement (side lt), exact over composition types.
inline double spectral_tail_log(const Spectrum& a, int n, double threshold_log,
                                TailSide side,
                                std::int64_t budget = 2'000'000) {
  if (n < 1) throw std::invalid_argument("spectral_tail: n >= 1");
  std::vector<double> terms;
  detail::for_each_composition(
      n, a.d(),
      [&](const std::vector<int>& m) {
        double log_eig = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i)
          log_eig += m[i] * std::log(a[i]);
        bool in_geq = log_eig >= threshold_log;
        if ((side == TailSide::geq) == in_geq)
          terms.push_back(detail::composition_log_weight(m, a));
      },
      budget);
  return log_sum_exp(terms);
}

inline double spectral_tail(const Spectrum& a, int n, double threshold_log,
                            TailSide side, std::int64_t budget = 2'000'000) {
  return std::min(std::exp(spectral_tail_log(a, n, threshold_log, side, budget)),
                  1.0);
}

struct Lemma1Violation {
  std::string inequality;  // "L10", "L20", "L21"
  double lambda;
  double s;      // only for L21
  double lhs;    // value that had to dominate
  double rhs;
};

struct Lemma1Report {
  int checks = 0;
  std::vector<Lemma1Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks (L10), (L20), (L21) for an exact universal-code evaluation.
/// lambda values are thresholds for the n-fold state (typically -n S).
inline Lemma1Report lemma1_check(const CodeEvaluation& ev, const Spectrum& a,
                                 const std::vector<double>& lambda_grid,
                                 const std::vector<double>& s_values = {1.0, 2.0},
                                 std::int64_t budget = 2'000'000) {
  constexpr double tol = 1e-9;
  Lemma1Report report;
  if (ev.degenerate)
    throw std::domain_error("lemma1_check: degenerate code evaluation");
  double eps = ev.visible_error;
  for (double lambda : lambda_grid) {
    double code_term = std::exp(lambda + ev.log_dim_K);
    double tail_lt = std::exp(
        spectral_tail_log(a, ev.n, lambda, TailSide::lt, budget));
    double tail_geq = std::exp(
        spectral_tail_log(a, ev.n, lambda, TailSide::geq, budget));
    ++report.checks;
    if (eps + code_term + tol < tail_lt)
      report.violations.push_back(
          {"L10", lambda, 0.0, eps + code_term, tail_lt});
    ++report.checks;
    if (1.0 - eps > code_term + tail_geq + tol)
      report.violations.push_back(
          {"L20", lambda, 0.0, code_term + tail_geq, 1.0 - eps});
    for (double s : s_values) {
      if (s < 1.0) throw std::invalid_argument("lemma1_check: s >= 1");
      ++report.checks;
      double mgf_term =
          std::exp((1.0 - s) * lambda + ev.n * renyi_psi(a, s));
      if (1.0 - eps > code_term + mgf_term + tol)
        report.violations.push_back(
            {"L21", lambda, s, code_term + mgf_term, 1.0 - eps});
    }
  }
  return report;
}

struct KyFanReport {
  int trials = 0;
  int violations = 0;
  double worst_margin = kPosInf;  // min over trials/k of lhs - rhs
};

/// Samples random separable states and checks the Ky Fan eigenvalue-sum form
/// of the reduced-state dominance: for every k, the sum of the k largest
/// eigenvalues of rho_A dominates that of rho.
inline KyFanReport kyfan_separable_check(int dA, int dB, int mixture_size,
                                         int trials, std::uint64_t seed,
                                         double tolerance = 1e-10) {
  if (dA < 1 || dB < 1) throw std::invalid_argument("kyfan: dims >= 1");
  KyFanReport report;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed + std::uint64_t(trial) * 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss;
    std::gamma_distribution<double> gamma(1.0, 1.0);  // Dirichlet(1,...,1)
    std::vector<double> w(std::size_t(mixture_size), 0.0);
    double wsum = 0.0;
    for (double& x : w) wsum += (x = gamma(rng));
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dA * dB, dA * dB);
    Eigen::MatrixXcd rhoA = Eigen::MatrixXcd::Zero(dA, dA);
    auto haar_vec = [&](int dim) {
      Eigen::VectorXcd v(dim);
      for (int i = 0; i < dim; ++i)
        v[i] = std::complex<double>(gauss(rng), gauss(rng));
      v.normalize();
      return v;
    };
    for (int i = 0; i < mixture_size; ++i) {
      Eigen::VectorXcd va = haar_vec(dA), vb = haar_vec(dB);
      Eigen::VectorXcd vab(dA * dB);
      for (int r = 0; r < dA; ++r)
        for (int c = 0; c < dB; ++c) vab[r * dB + c] = va[r] * vb[c];
      rho += (w[std::size_t(i)] / wsum) * (vab * vab.adjoint());
      rhoA += (w[std::size_t(i)] / wsum) * (va * va.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esAB(rho), esA(rhoA);
    std::vector<double> evAB(esAB.eigenvalues().data(),
                             esAB.eigenvalues().data() + dA * dB);
    std::vector<double> evA(esA.eigenvalues().data(),
                            esA.eigenvalues().data() + dA);
    std::sort(evAB.rbegin(), evAB.rend());
    std::sort(evA.rbegin(), evA.rend());
    evA.resize(std::size_t(dA * dB), 0.0);  // pad with zeros
    double sumA = 0.0, sumAB = 0.0;
    bool violated = false;
    for (int k = 0; k < dA * dB; ++k) {
      sumA += evA[std::size_t(k)];
      sumAB += evAB[std::size_t(k)];
      report.worst_margin = std::min(report.worst_margin, sumA - sumAB);
      if (sumA + tolerance < sumAB) violated = true;
    }
    ++report.trials;
    if (violated) ++report.violations;
  }
  return report;
}

/// Markov bound E[X]/c on P{X >= c}.
inline double markov_bound(double expectation, double c) {
  if (!(c > 0.0) || expectation < 0.0)
    throw std::invalid_argument("markov_bound: need c > 0, expectation >= 0");
  return expectation / c;
}

/// Log moment generating function together with the limits of its derivative.
struct RateFunctionSpec {
  std::function<double(double)> phi;  // phi(t) = ln E[e^{tY}], phi(0) = 0
  double x1;                          // lim_{t -> +inf} phi'(t)
  double x2;                          // lim_{t -> -inf} phi'(t)
  double x3;                          // phi'(0)
};

/// sup_{t>=0} (t x - phi(t)): the upper rate of Cramer's theorem,
/// piecewise per the derivative limits. +inf above x1, 0 below x3.
inline double cramer_upper_exponent(const RateFunctionSpec& spec, double x) {
  if (x > spec.x1) return kPosInf;
  if (x <= spec.x3) return 0.0;
  auto phi_prime = [&](double t) {
    double h = 1e-6 * std::max(1.0, std::abs(t));
    return (spec.phi(t + h) - spec.phi(t - h)) / (2.0 * h);
  };
  double hi = 1.0;
  while (phi_prime(hi) < x) {
    hi *= 2.0;
    if (hi > 1e6) break;  // x at (or numerically past) x1: use the cap
  }
  // phi' is increasing, so x - phi'(t) is decreasing with a sign change in [0, hi]
  double t = bisect_decreasing([&](double t) { return x - phi_prime(t); }, 0.0,
                               hi, 1e-13 * std::max(1.0, hi));
  return x * t - spec.phi(t);
}

struct TailExponentRow {
  int n;
  double empirical;  // -(1/n) ln tail at threshold e^{-nS}
  double analytic;   // eta(a, S)
};

/// Empirical lower-tail exponents of the exact spectral tails against eta(S).
inline std::vector<TailExponentRow> tail_exponent_empirical(
    const Spectrum& a, double S, const std::vector<int>& n_values,
    std::int64_t budget = 2'000'000) {
  double analytic = eta(a, S);
  std::vector<TailExponentRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    double log_tail =
        spectral_tail_log(a, n, -double(n) * S, TailSide::lt, budget);
    rows.push_back({n, -log_tail / n, analytic});
  }
  return rows;
}

}  // namespace qsc
