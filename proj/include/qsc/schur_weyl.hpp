#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "qsc/numeric.hpp"
#include "qsc/spectrum.hpp"

namespace qsc {

using BigInt = boost::multiprecision::cpp_int;

/// Non-increasing partition of n with at most d parts (trailing zeros kept).
struct YoungIndex {
  std::vector<int> parts;
  int n = 0;

  explicit YoungIndex(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 0) throw std::invalid_argument("YoungIndex: negative part");
      if (i > 0 && parts[i] > parts[i - 1])
        throw std::invalid_argument("YoungIndex: parts must be non-increasing");
      n += parts[i];
    }
  }

  int depth() const {  // number of nonzero parts
    int k = 0;
    while (k < int(parts.size()) && parts[std::size_t(k)] > 0) ++k;
    return k;
  }

  /// Normalized type n/n as a probability vector of length parts.size().
  std::vector<double> normalized() const {
    std::vector<double> t(parts.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = double(parts[i]) / n;
    return t;
  }

  bool operator==(const YoungIndex& o) const { return parts == o.parts; }
};

/// All partitions of n into at most d parts, in lexicographically
/// decreasing order of parts (deterministic).
inline std::vector<YoungIndex> enumerate_young(int n, int d,
                                               std::int64_t budget = 2'000'000) {
  if (n < 1 || d < 1) throw std::invalid_argument("enumerate_young: n, d >= 1");
  std::vector<YoungIndex> out;
  std::vector<int> cur(std::size_t(d), 0);
  std::function<void(int, int, int)> rec = [&](int pos, int remaining, int cap) {
    if (pos == d) {
      if (remaining == 0) {
        if (std::int64_t(out.size()) >= budget)
          throw budget_exceeded("enumerate_young: partition budget exceeded");
        out.emplace_back(cur);
      }
      return;
    }
    int lo = (remaining + (d - pos) - 1) / (d - pos);  // parts must stay feasible
    for (int v = std::min(cap, remaining); v >= lo; --v) {
      cur[std::size_t(pos)] = v;
      rec(pos + 1, remaining - v, v);
    }
    cur[std::size_t(pos)] = 0;
  };
  rec(0, n, n);
  return out;
}

namespace detail {

inline BigInt big_factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline double log_big(const BigInt& x) {
  // dims fit comfortably in double range for every feasible enumeration
  return std::log(x.convert_to<double>());
}

}  // namespace detail

/// dim V_n, the symmetric-group irrep dimension:
/// n! / prod_i (n_i + d - i)!  *  prod_{i<j} (n_i - n_j + j - i), exact.
inline BigInt dim_sym_group_irrep(const YoungIndex& lambda) {
  int d = int(lambda.parts.size());
  BigInt num = detail::big_factorial(lambda.n);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      num *= lambda.parts[std::size_t(i)] - lambda.parts[std::size_t(j)] + j - i;
  BigInt den = 1;
  for (int i = 0; i < d; ++i)
    den *= detail::big_factorial(lambda.parts[std::size_t(i)] + d - 1 - i);
  return num / den;
}

/// dim U_n, the SU(d) irrep dimension (Weyl dimension formula), exact.
inline BigInt dim_su_d_irrep(const YoungIndex& lambda, int d) {
  if (lambda.depth() > d)
    throw std::invalid_argument("dim_su_d_irrep: more than d parts");
  auto part = [&](int i) {
    return i < int(lambda.parts.size()) ? lambda.parts[std::size_t(i)] : 0;
  };
  BigInt num = 1, den = 1;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      num *= part(i) - part(j) + j - i;
      den *= j - i;
    }
  return num / den;
}

/// ln C(n) = ln( n! / prod n_i! ).
inline double multinomial_log(const YoungIndex& lambda) {
  double r = log_factorial(lambda.n);
  for (int p : lambda.parts) r -= log_factorial(p);
  return r;
}

namespace detail {

// Partitions are encoded 8 bits per part (parts <= 255, at most 8 levels).
inline std::uint64_t encode_parts(const std::vector<int>& p) {
  std::uint64_t key = 0;
  for (int v : p) key = (key << 8) | std::uint64_t(v);
  return key;
}

inline double lse2(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  double m = std::max(x, y);
  return m + std::log(std::exp(x - m) + std::exp(y - m));
}

// Gelfand-Tsetlin branching: peel one variable per level, pushing the weight
// t_len^{removed} down to every interlacing partition of length len-1.
// Values are monomial sums held either in linear space (relative to a_1^n)
// or as logs; the linear path is the fast one.
inline double schur_log_gt(const std::vector<int>& parts,
                           const std::vector<double>& log_t, bool log_space) {
  int d = int(parts.size());
  if (d == 1) return parts[0] * log_t[0];
  std::map<std::uint64_t, double> level{
      {encode_parts(parts), log_space ? 0.0 : 1.0}};
  std::vector<int> nu, mu;
  for (int len = d; len >= 2; --len) {
    double lt = log_t[std::size_t(len) - 1];
    std::map<std::uint64_t, double> next;
    nu.assign(std::size_t(len), 0);
    mu.assign(std::size_t(len) - 1, 0);
    for (const auto& [key, val] : level) {
      for (int i = len - 1; i >= 0; --i)
        nu[std::size_t(i)] = int((key >> (8 * (len - 1 - i))) & 255u);
      // weight exponent |nu| - |mu|; the last part of nu is absorbed whole
      std::function<void(int, int)> rec = [&](int pos, int removed) {
        if (pos == len - 1) {
          removed += nu[std::size_t(len) - 1];
          if (log_space) {
            auto [it, fresh] = next.try_emplace(encode_parts(mu), kNegInf);
            it->second = lse2(it->second, val + removed * lt);
          } else {
            next[encode_parts(mu)] += val * std::exp(removed * lt);
          }
          return;
        }
        for (int v = nu[std::size_t(pos) + 1]; v <= nu[std::size_t(pos)]; ++v) {
          mu[std::size_t(pos)] = v;
          rec(pos + 1, removed + (nu[std::size_t(pos)] - v));
        }
      };
      rec(0, 0);
    }
    level = std::move(next);
  }
  double total = log_space ? kNegInf : 0.0;
  for (const auto& [key, val] : level) {
    double w = double(key & 255u) * log_t[0];
    if (log_space)
      total = lse2(total, val + w);
    else
      total += val * std::exp(w);
  }
  return log_space ? total : std::log(total);
}

}  // namespace detail

/// ln s_lambda(a): sum over semistandard tableaux monomials via the
/// Gelfand-Tsetlin branching recursion. Computed relative to a_1^n so the
/// fast path stays in linear space; falls back to log-space accumulation
/// when the scaled sum underflows.
inline double schur_polynomial_log(const YoungIndex& lambda, const Spectrum& a) {
  if (int(lambda.parts.size()) > a.d())
    throw std::invalid_argument("schur_polynomial_log: more parts than dimensions");
  if (lambda.parts[0] > 255 || a.d() > 8)
    throw std::invalid_argument("schur_polynomial_log: parts <= 255 and d <= 8");
  std::vector<int> parts = lambda.parts;
  parts.resize(std::size_t(a.d()), 0);
  std::vector<double> log_t(std::size_t(a.d()));
  for (int i = 0; i < a.d(); ++i)
    log_t[std::size_t(i)] = std::log(a[std::size_t(i)]) - std::log(a[0]);
  double scaled = detail::schur_log_gt(parts, log_t, /*log_space=*/false);
  if (!std::isfinite(scaled))
    scaled = detail::schur_log_gt(parts, log_t, /*log_space=*/true);
  return lambda.n * std::log(a[0]) + scaled;
}

/// ln Tr P_n rho^{tensor n} = ln dim V_n + ln s_lambda(a).
inline double block_trace_log(const YoungIndex& lambda, const Spectrum& a) {
  return detail::log_big(dim_sym_group_irrep(lambda)) +
         schur_polynomial_log(lambda, a);
}

/// Per-block data for one Young index.
struct BlockData {
  YoungIndex lambda;
  BigInt dim_sym;
  BigInt dim_unitary;
  double log_trace;
};

inline BlockData block_data(const YoungIndex& lambda, const Spectrum& a) {
  return {lambda, dim_sym_group_irrep(lambda), dim_su_d_irrep(lambda, a.d()),
          block_trace_log(lambda, a)};
}

/// ln sum of Tr P_lambda rho^{tensor n} over Young indices whose normalized
/// type satisfies the predicate. Deterministic accumulation order.
inline double region_trace_log(
    int n, const Spectrum& a,
    const std::function<bool(const std::vector<double>&)>& predicate,
    std::int64_t budget = 2'000'000) {
  auto young = enumerate_young(n, a.d(), budget);
  std::vector<double> terms;
  terms.reserve(young.size());
  for (const auto& lam : young)
    if (predicate(lam.normalized())) terms.push_back(block_trace_log(lam, a));
  return log_sum_exp(terms);
}

/// ln s_lambda(a) for every partition with at most a.d() parts and
/// |lambda| <= n_max, computed in one bottom-up branching pass (log space).
/// Much cheaper than per-lambda calls when sweeping whole level sets.
inline std::map<std::vector<int>, double> schur_table_log(int n_max,
                                                          const Spectrum& a) {
  std::map<std::vector<int>, double> table;
  for (int m = 0; m <= n_max; ++m)
    table[{m}] = m * std::log(a[0]);
  for (int k = 2; k <= a.d(); ++k) {
    double log_ak = std::log(a[std::size_t(k) - 1]);
    std::map<std::vector<int>, double> next;
    std::vector<int> nu(std::size_t(k), 0);
    for (const auto& [mu, log_s] : table) {
      int mu_sum = 0;
      for (int p : mu) mu_sum += p;
      // nu interlaces mu: nu_1 >= mu_1 >= nu_2 >= ... >= mu_{k-1} >= nu_k >= 0
      std::function<void(int, int)> rec = [&](int pos, int sum) {
        if (pos == k) {
          auto [it, fresh] = next.try_emplace(nu, kNegInf);
          it->second = detail::lse2(it->second, log_s + (sum - mu_sum) * log_ak);
          return;
        }
        int lo = pos < k - 1 ? mu[std::size_t(pos)] : 0;
        int hi = pos == 0 ? n_max : mu[std::size_t(pos) - 1];
        for (int v = lo; v <= hi && sum + v <= n_max; ++v) {
          nu[std::size_t(pos)] = v;
          rec(pos + 1, sum + v);
        }
      };
      rec(0, 0);
    }
    table = std::move(next);
  }
  return table;
}

/// One row of the dimension/trace bound sweep: the polynomial-envelope
/// sandwiches that every Young index must satisfy.
struct BlockBoundRow {
  YoungIndex lambda;
  bool dim_lower;    // (n+d)^{-d(d+1)/2} e^{nH} <= dim V
  bool dim_upper;    // dim V <= (n+d)^{2d} e^{nH}
  bool unitary_dim;  // dim U <= (n+1)^d
  bool trace_lower;  // (n+d)^{-d(d+1)/2} e^{-nD} <= Tr P rho^n
  bool trace_upper;  // Tr P rho^n <= (n+d)^{3d} e^{-nD}
  bool ok() const {
    return dim_lower && dim_upper && unitary_dim && trace_lower && trace_upper;
  }
};

struct BlockBoundReport {
  int n = 0;
  bool index_count = true;   // #Y_n <= (n+1)^d
  bool region_lower = true;  // (n+d)^{-d(d+1)/2} e^{-n min D} <= region sum
  bool region_upper = true;  // region sum <= (n+d)^{4d} e^{-n min D}
  std::vector<BlockBoundRow> rows;
  int violations = 0;
};

/// Sweep every Young index at block length n and assert the per-block and
/// per-region polynomial sandwiches. Regions are the entropy sublevel and
/// superlevel sets at each rate in `region_rates`; their upper bound is
/// checked against the discrete divergence minimum, which is the form the
/// counting argument actually yields (stronger than the continuous infimum).
inline BlockBoundReport check_block_bounds(int n, const Spectrum& a,
                                           const std::vector<double>& region_rates,
                                           std::int64_t budget = 2'000'000,
                                           double tol = 1e-9) {
  const int d = a.d();
  auto young = enumerate_young(n, d, budget);
  const double log_nd = std::log(double(n + d));
  const double lower_pref = -0.5 * d * (d + 1) * log_nd;
  BlockBoundReport report;
  report.n = n;
  report.index_count =
      std::log(double(young.size())) <= d * std::log(double(n + 1)) + tol;
  if (!report.index_count) ++report.violations;

  std::vector<double> log_traces, divergences, entropies;
  for (const auto& lam : young) {
    auto type = lam.normalized();
    double H = entropy(type);
    double D = kl_divergence(type, a);
    double log_dim_v = detail::log_big(dim_sym_group_irrep(lam));
    double log_dim_u = detail::log_big(dim_su_d_irrep(lam, d));
    double log_tr = block_trace_log(lam, a);
    BlockBoundRow row{lam,
                      lower_pref + n * H <= log_dim_v + tol,
                      log_dim_v <= 2 * d * log_nd + n * H + tol,
                      log_dim_u <= d * std::log(double(n + 1)) + tol,
                      lower_pref - n * D <= log_tr + tol,
                      log_tr <= 3 * d * log_nd - n * D + tol};
    if (!row.ok()) ++report.violations;
    log_traces.push_back(log_tr);
    divergences.push_back(D);
    entropies.push_back(H);
    report.rows.push_back(std::move(row));
  }

  for (double R : region_rates) {
    for (bool sublevel : {true, false}) {
      std::vector<double> terms;
      double min_div = kPosInf;
      for (std::size_t i = 0; i < young.size(); ++i) {
        bool in = sublevel ? entropies[i] <= R + 1e-15 : entropies[i] >= R - 1e-15;
        if (!in) continue;
        terms.push_back(log_traces[i]);
        min_div = std::min(min_div, divergences[i]);
      }
      if (terms.empty()) continue;
      double region = log_sum_exp(terms);
      if (!(lower_pref - n * min_div <= region + tol)) {
        report.region_lower = false;
        ++report.violations;
      }
      if (!(region <= 4 * d * log_nd - n * min_div + tol)) {
        report.region_upper = false;
        ++report.violations;
      }
    }
  }
  return report;
}

}  // namespace qsc
