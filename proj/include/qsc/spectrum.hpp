#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsc/numeric.hpp"

namespace qsc {

/// Eigenvalue spectrum of a density operator: strictly positive
/// probabilities sorted non-increasing, summing to one.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("Spectrum: empty");
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!(values_[i] > 0.0))
        throw std::invalid_argument("Spectrum: values must be strictly positive");
      if (i > 0 && values_[i] > values_[i - 1] + 1e-15)
        throw std::invalid_argument("Spectrum: values must be non-increasing");
      sum += values_[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("Spectrum: values must sum to 1");
  }

  static Spectrum uniform(int d) {
    if (d < 1) throw std::invalid_argument("Spectrum: d must be positive");
    return Spectrum(std::vector<double>(std::size_t(d), 1.0 / d));
  }

  const std::vector<double>& values() const { return values_; }
  int d() const { return int(values_.size()); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Finite ensemble of pure states with probabilities.
class PureSource {
 public:
  PureSource(std::vector<Eigen::VectorXcd> states, std::vector<double> probs)
      : states_(std::move(states)), probs_(std::move(probs)) {
    if (states_.empty() || states_.size() != probs_.size())
      throw std::invalid_argument("PureSource: states/probs size mismatch");
    const auto dim = states_.front().size();
    double sum = 0.0;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (states_[i].size() != dim)
        throw std::invalid_argument("PureSource: inconsistent state dimensions");
      if (std::abs(states_[i].norm() - 1.0) > 1e-12)
        throw std::invalid_argument("PureSource: states must have unit norm");
      if (!(probs_[i] > 0.0))
        throw std::invalid_argument("PureSource: probabilities must be positive");
      sum += probs_[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("PureSource: probabilities must sum to 1");
  }

  const std::vector<Eigen::VectorXcd>& states() const { return states_; }
  const std::vector<double>& probs() const { return probs_; }
  int dim() const { return int(states_.front().size()); }
  int size() const { return int(states_.size()); }

  /// Average state sum_i p_i |phi_i><phi_i|.
  Eigen::MatrixXcd average_state() const {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim(), dim());
    for (std::size_t i = 0; i < states_.size(); ++i)
      rho += probs_[i] * (states_[i] * states_[i].adjoint());
    return rho;
  }

 private:
  std::vector<Eigen::VectorXcd> states_;
  std::vector<double> probs_;
};

/// Shannon entropy -sum a_i ln a_i in nats.
inline double entropy(const Spectrum& a) {
  double h = 0.0;
  for (double x : a.values()) h -= x * std::log(x);
  return std::max(h, 0.0);
}

inline double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return std::max(h, 0.0);
}

/// D(b || a) = sum b_i ln(b_i / a_i), with 0 ln 0 = 0.
inline double kl_divergence(const std::vector<double>& b, const Spectrum& a) {
  if (int(b.size()) != a.d())
    throw std::invalid_argument("kl_divergence: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < -1e-15) throw std::invalid_argument("kl_divergence: negative mass");
    if (b[i] > 0.0) d += b[i] * (std::log(b[i]) - std::log(a[i]));
  }
  return std::max(d, 0.0);
}

/// psi(s) = ln sum_i a_i^s; defined for every real s.
inline double renyi_psi(const Spectrum& a, double s) {
  std::vector<double> terms(a.values().size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = s * std::log(a[i]);
  return log_sum_exp(terms);
}

/// (psi'(s), psi''(s)).
inline std::pair<double, double> psi_derivatives(const Spectrum& a, double s) {
  double z = 0.0, m1 = 0.0, m2 = 0.0;
  for (double x : a.values()) {
    double w = std::pow(x, s);
    double lx = std::log(x);
    z += w;
    m1 += w * lx;
    m2 += w * lx * lx;
  }
  double d1 = m1 / z;
  double d2 = std::max(m2 / z - d1 * d1, 0.0);
  return {d1, d2};
}

/// a_i^s / sum_j a_j^s. tilted(a, 1) = a, tilted(a, 0) = uniform.
inline Spectrum tilted(const Spectrum& a, double s) {
  if (s < 0.0) throw std::invalid_argument("tilted: s must be >= 0");
  double psi = renyi_psi(a, s);
  std::vector<double> b(a.values().size());
  for (std::size_t i = 0; i < b.size(); ++i)
    b[i] = std::max(std::exp(s * std::log(a[i]) - psi),
                    std::numeric_limits<double>::min());
  // remove rounding drift so the result is again a valid Spectrum
  double sum = std::accumulate(b.begin(), b.end(), 0.0);
  for (double& x : b) x /= sum;
  std::sort(b.begin(), b.end(), std::greater<>());
  return Spectrum(std::move(b));
}

/// Largest k with a_k == a_1 (relative tolerance 1e-12).
inline int top_multiplicity(const Spectrum& a) {
  int k = 1;
  while (k < a.d() && a[std::size_t(k)] >= a[0] * (1.0 - 1e-12)) ++k;
  return k;
}

/// Eigenvalues of the average state, sorted descending, with eigenvalues
/// below 1e-12 stripped and the rest renormalized.
inline Spectrum spectrum_from_source(const PureSource& src) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(src.average_state());
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double v = es.eigenvalues()[i];
    if (v > 1e-12) vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  double sum = std::accumulate(vals.begin(), vals.end(), 0.0);
  for (double& v : vals) v /= sum;
  return Spectrum(std::move(vals));
}

}  // namespace qsc
