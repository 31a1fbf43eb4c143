#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qsc/schur_weyl.hpp"
#include "qsc/spectrum.hpp"
#include "qsc/universal_code.hpp"

namespace qsc {

/// Cycle type of a permutation: non-increasing cycle lengths summing to n.
using CycleType = std::vector<int>;

namespace detail {

constexpr int kMaxOracleQubits = 8;
constexpr long kMaxOracleDim = 4096;

inline long ipow(int b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline CycleType cycle_type(const std::vector<int>& perm) {
  int n = int(perm.size());
  std::vector<bool> seen(std::size_t(n), false);
  CycleType type;
  for (int i = 0; i < n; ++i) {
    if (seen[std::size_t(i)]) continue;
    int len = 0, j = i;
    while (!seen[std::size_t(j)]) {
      seen[std::size_t(j)] = true;
      j = perm[std::size_t(j)];
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

// Murnaghan-Nakayama recursion over border strips, memoized.
inline long long mn_character(std::vector<int> lambda, std::vector<int> mu,
                              std::map<std::pair<std::vector<int>, std::vector<int>>,
                                       long long>& memo) {
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  if (lambda.empty()) return 1;
  auto key = std::make_pair(lambda, mu);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  int strip = mu.front();
  std::vector<int> mu_rest(mu.begin() + 1, mu.end());
  long long total = 0;
  int rows = int(lambda.size());
  // A border strip of length `strip` spanning rows [top_row, end_row]
  // removes, from each row r in [top_row, end_row), everything right of
  // lambda[r+1] - 1, and the remaining cells from the right end of end_row.
  for (int end_row = 0; end_row < rows; ++end_row) {
    for (int top_row = 0; top_row <= end_row; ++top_row) {
      std::vector<int> shape = lambda;
      long long size = 0;
      bool valid = true;
      for (int r = top_row; r < end_row; ++r) {
        int new_len = lambda[std::size_t(r) + 1] - 1;
        if (new_len < 0) {
          valid = false;
          break;
        }
        size += lambda[std::size_t(r)] - new_len;
        shape[std::size_t(r)] = new_len;
      }
      if (!valid) continue;
      long long need = strip - size;
      int floor_len = end_row + 1 < rows ? lambda[std::size_t(end_row) + 1] : 0;
      if (need <= 0 || lambda[std::size_t(end_row)] - need < floor_len) continue;
      int new_end = lambda[std::size_t(end_row)] - int(need);
      shape[std::size_t(end_row)] = new_end;
      bool partition = true;
      for (std::size_t r = 1; r < shape.size(); ++r)
        if (shape[r] > shape[r - 1]) partition = false;
      if (!partition) continue;
      int height = end_row - top_row;  // rows spanned minus one
      total += (height % 2 == 0 ? 1 : -1) * mn_character(shape, mu_rest, memo);
    }
  }
  memo[key] = total;
  return total;
}

}  // namespace detail

/// Symmetric-group character chi_lambda(mu) via Murnaghan-Nakayama.
inline long long sn_character(const YoungIndex& lambda, const CycleType& mu) {
  int mu_n = std::accumulate(mu.begin(), mu.end(), 0);
  if (mu_n != lambda.n)
    throw std::invalid_argument("sn_character: lambda and mu must partition the same n");
  std::vector<int> lam;
  for (int p : lambda.parts)
    if (p > 0) lam.push_back(p);
  std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo;
  return detail::mn_character(lam, mu, memo);
}

/// P_lambda as the central idempotent (dim V_lambda / n!) sum_sigma
/// chi_lambda(sigma) U_sigma on (C^d)^{tensor n}.
inline Eigen::MatrixXd central_projector(const YoungIndex& lambda, int n, int d) {
  if (n > detail::kMaxOracleQubits || detail::ipow(d, n) > detail::kMaxOracleDim)
    throw budget_exceeded("central_projector: dimension budget exceeded");
  long dim = detail::ipow(d, n);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<int> perm(std::size_t(n), 0);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<CycleType, long long> chi_cache;
  std::vector<int> digits(std::size_t(n), 0);
  do {
    auto type = detail::cycle_type(perm);
    auto it = chi_cache.find(type);
    long long chi = it != chi_cache.end() ? it->second
                                          : (chi_cache[type] = sn_character(lambda, type));
    if (chi == 0) continue;
    for (long x = 0; x < dim; ++x) {
      long rest = x;
      for (int i = n - 1; i >= 0; --i) {
        digits[std::size_t(i)] = int(rest % d);
        rest /= d;
      }
      // U_sigma permutes tensor factors: factor i moves to slot perm[i]
      long y = 0;
      std::vector<int> out(std::size_t(n), 0);
      for (int i = 0; i < n; ++i)
        out[std::size_t(perm[std::size_t(i)])] = digits[std::size_t(i)];
      for (int i = 0; i < n; ++i) y = y * d + out[std::size_t(i)];
      P(y, x) += double(chi);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  double dim_v = dim_sym_group_irrep(lambda).convert_to<double>();
  P *= dim_v / std::tgamma(double(n) + 1.0);
  return P;
}

/// Blind encoder E(rho) = P rho P + Tr(rho (I-P)) I_K / Tr I_K.
inline Eigen::MatrixXcd blind_encode(const Eigen::MatrixXd& P,
                                     const Eigen::MatrixXcd& rho) {
  double tr_P = P.trace();
  if (tr_P < 0.5) throw std::invalid_argument("blind_encode: empty code");
  double outside = 1.0 - (P * rho).trace().real();
  return P * rho * P + (outside / tr_P) * P.cast<std::complex<double>>();
}

struct ExactErrors {
  double visible;
  double blind;
  double bures_visible;
  double bures_blind;
  double log_dim_K;
};

/// Exact average errors of the universal code on the n-fold source, by
/// explicit enumeration of source strings against the projector subspace.
inline ExactErrors exact_errors(const PureSource& src, double R, int n,
                                std::int64_t budget = 2'000'000,
                                bool use_adjusted_rate = true) {
  int d = src.dim();
  if (n > detail::kMaxOracleQubits || detail::ipow(d, n) > detail::kMaxOracleDim)
    throw budget_exceeded("exact_errors: dimension budget exceeded");
  double R_n = use_adjusted_rate ? adjusted_rate(R, n, d) : R;
  if (R_n < 0.0) throw std::domain_error("exact_errors: degenerate code (R_n < 0)");
  long dim = detail::ipow(d, n);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& lam : enumerate_young(n, d, budget))
    if (entropy(lam.normalized()) <= R_n) P += central_projector(lam, n, d);
  double dim_K = P.trace();
  if (dim_K < 0.5) throw std::domain_error("exact_errors: empty code");

  int m = src.size();
  long strings = 1;
  for (int i = 0; i < n; ++i) {
    strings *= m;
    if (strings > budget) throw budget_exceeded("exact_errors: string budget");
  }
  ExactErrors err{0.0, 0.0, 0.0, 0.0, std::log(dim_K)};
  std::vector<int> idx(std::size_t(n), 0);
  for (long s = 0; s < strings; ++s) {
    long rest = s;
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      idx[std::size_t(i)] = int(rest % m);
      rest /= m;
      p *= src.probs()[std::size_t(idx[std::size_t(i)])];
    }
    Eigen::VectorXcd v = src.states()[std::size_t(idx[0])];
    for (int i = 1; i < n; ++i) {
      const auto& w = src.states()[std::size_t(idx[std::size_t(i)])];
      Eigen::VectorXcd t(v.size() * w.size());
      for (Eigen::Index r = 0; r < v.size(); ++r)
        t.segment(r * w.size(), w.size()) = v[r] * w;
      v = std::move(t);
    }
    double q = (v.adjoint() * P * v)(0).real();
    q = std::clamp(q, 0.0, 1.0);
    double blind_fid = q * q + (1.0 - q) * q / dim_K;
    err.visible += p * (1.0 - q);
    err.blind += p * (1.0 - blind_fid);
    err.bures_visible += p * (1.0 - std::sqrt(q));
    err.bures_blind += p * (1.0 - std::sqrt(blind_fid));
  }
  return err;
}

struct CrossCheckRow {
  YoungIndex lambda;
  double matrix_trace;
  double combinatorial_trace;
  double operator_norm;        // top eigenvalue of P rho^{tensor n} P
  double highest_weight;       // prod a_i^{n_i}
  int top_multiplicity;        // eigenvalue count at the top, within 1e-9
  long long dim_sym;
};

/// Matrix-level validation of Tr P_lambda rho^{tensor n} = dim V * s_lambda(a)
/// and of the operator-norm identity for every block at this n.
inline std::vector<CrossCheckRow> schur_weyl_cross_check(
    const Spectrum& a, int n, std::int64_t budget = 2'000'000) {
  int d = a.d();
  if (n > detail::kMaxOracleQubits || detail::ipow(d, n) > detail::kMaxOracleDim)
    throw budget_exceeded("schur_weyl_cross_check: dimension budget exceeded");
  long dim = detail::ipow(d, n);
  // rho diagonal in the computational basis; rho^{tensor n} is diagonal too
  Eigen::VectorXd diag(dim);
  for (long x = 0; x < dim; ++x) {
    long rest = x;
    double val = 1.0;
    for (int i = 0; i < n; ++i) {
      val *= a[std::size_t(rest % d)];
      rest /= d;
    }
    diag[x] = val;
  }
  std::vector<CrossCheckRow> rows;
  for (const auto& lam : enumerate_young(n, d, budget)) {
    Eigen::MatrixXd P = central_projector(lam, n, d);
    Eigen::MatrixXd PrP = P * diag.asDiagonal() * P;
    double trace = (P * diag.asDiagonal()).trace();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(PrP,
                                                      Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().maxCoeff();
    int mult = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()[i] > top - 1e-9) ++mult;
    double hw = 0.0;
    for (std::size_t i = 0; i < lam.parts.size(); ++i)
      hw += lam.parts[i] * std::log(a[i]);
    rows.push_back({lam, trace, std::exp(block_trace_log(lam, a)), top,
                    std::exp(hw), mult,
                    dim_sym_group_irrep(lam).convert_to<long long>()});
  }
  return rows;
}

}  // namespace qsc
