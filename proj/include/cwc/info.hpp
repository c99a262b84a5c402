#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cwc/channel.hpp"
#include "cwc/distribution.hpp"

namespace cwc {

// All information quantities are in bits (log base 2).

inline constexpr double kPinskerConstant = 1.1774100226294385;  // sqrt(2 ln 2)

namespace detail {
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }
}  // namespace detail

inline double entropy(const Distribution& p) {
  double h = 0.0;
  for (double v : p) h -= detail::xlog2x(v);
  return std::max(0.0, h);
}

inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary_entropy: x outside [0,1]");
  return -detail::xlog2x(x) - detail::xlog2x(1.0 - x);
}

/// H(V|p) = Σ_a p(a) H(row a).
inline double conditional_entropy(const Distribution& p, const Channel& channel) {
  if (p.size() != channel.input_size())
    throw std::invalid_argument("conditional_entropy: dimension mismatch");
  double h = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] == 0.0) continue;
    double ha = 0.0;
    for (double v : channel.row(a)) ha -= detail::xlog2x(v);
    h += p[a] * ha;
  }
  return h;
}

/// I(p,W) = H(pW) − H(W|p).
inline double mutual_information(const Distribution& p, const Channel& channel) {
  const double value = entropy(output_distribution(p, channel)) - conditional_entropy(p, channel);
  return std::max(0.0, value);
}

inline double variational_distance(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("variational_distance: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return d;
}

/// Joint distribution over a product alphabet J × Z.
class JointDistribution {
 public:
  explicit JointDistribution(std::vector<std::vector<double>> probs) : p_(std::move(probs)) {
    if (p_.empty() || p_[0].empty()) throw std::invalid_argument("JointDistribution: empty");
    double sum = 0.0;
    for (const auto& row : p_) {
      if (row.size() != p_[0].size()) throw std::invalid_argument("JointDistribution: ragged");
      for (double v : row) {
        if (!(v >= 0.0)) throw std::invalid_argument("JointDistribution: negative entry");
        sum += v;
      }
    }
    if (std::abs(sum - 1.0) > kProbabilityTol)
      throw std::invalid_argument("JointDistribution: total mass != 1");
  }

  /// Joint induced by an input distribution and a channel: p(a)W(b|a).
  static JointDistribution induced(const Distribution& p, const Channel& channel) {
    if (p.size() != channel.input_size())
      throw std::invalid_argument("JointDistribution::induced: dimension mismatch");
    std::vector<std::vector<double>> probs(p.size());
    for (std::size_t a = 0; a < p.size(); ++a) {
      probs[a].resize(channel.output_size());
      for (std::size_t b = 0; b < channel.output_size(); ++b) probs[a][b] = p[a] * channel(b, a);
    }
    return JointDistribution(std::move(probs));
  }

  std::size_t rows() const { return p_.size(); }
  std::size_t cols() const { return p_[0].size(); }
  double operator()(std::size_t i, std::size_t j) const { return p_[i][j]; }

  std::vector<double> row_marginal() const {
    std::vector<double> m(rows(), 0.0);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) m[i] += p_[i][j];
    return m;
  }
  std::vector<double> col_marginal() const {
    std::vector<double> m(cols(), 0.0);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) m[j] += p_[i][j];
    return m;
  }

 private:
  std::vector<std::vector<double>> p_;
};

/// I(J;Z) = D(joint || product of marginals) in bits. A joint mass over a
/// product-marginal zero cell yields +infinity as a distinguished value.
inline double mutual_information_joint(const JointDistribution& joint) {
  const auto pj = joint.row_marginal();
  const auto pz = joint.col_marginal();
  double mi = 0.0;
  for (std::size_t i = 0; i < joint.rows(); ++i)
    for (std::size_t j = 0; j < joint.cols(); ++j) {
      const double v = joint(i, j);
      if (v == 0.0) continue;
      const double denom = pj[i] * pz[j];
      if (denom == 0.0) return std::numeric_limits<double>::infinity();
      mi += v * std::log2(v / denom);
    }
  return std::max(0.0, mi);
}

/// Pinsker-type bound: TV(p_{JZ}, p_J ⊗ p_Z) ≤ c·√I(J;Z) with c = √(2 ln 2)
/// for mutual information in bits.
inline double pinsker_tv_bound(double mutual_info_bits) {
  if (!(mutual_info_bits >= 0.0))
    throw std::invalid_argument("pinsker_tv_bound: negative input");
  return kPinskerConstant * std::sqrt(mutual_info_bits);
}

}  // namespace cwc
