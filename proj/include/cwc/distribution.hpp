#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cwc/common.hpp"

namespace cwc {

inline constexpr double kProbabilityTol = 1e-12;

/// Probability vector over a finite 0-based alphabet. Immutable after
/// construction; construction validates non-negativity and unit sum to
/// 1e-12. Renormalization is explicit, never implicit.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw std::invalid_argument("Distribution: empty alphabet");
    double sum = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0)) throw std::invalid_argument("Distribution: negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kProbabilityTol)
      throw std::invalid_argument("Distribution: entries sum to " + std::to_string(sum));
  }

  static Distribution uniform(std::size_t size) {
    return Distribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
  }

  static Distribution point_mass(std::size_t symbol, std::size_t size) {
    std::vector<double> v(size, 0.0);
    v.at(symbol) = 1.0;
    return Distribution(std::move(v));
  }

  /// Explicit opt-in renormalization of a non-negative vector.
  static Distribution normalized(std::vector<double> raw) {
    double sum = 0.0;
    for (double v : raw) {
      if (!(v >= 0.0)) throw std::invalid_argument("normalized: negative entry");
      sum += v;
    }
    if (sum <= 0.0) throw std::invalid_argument("normalized: zero total mass");
    for (double& v : raw) v /= sum;
    return Distribution(std::move(raw));
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

  auto begin() const { return p_.begin(); }
  auto end() const { return p_.end(); }

 private:
  std::vector<double> p_;
};

/// Euclidean projection of an arbitrary vector onto the probability simplex.
inline std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0;
  double theta = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      theta = t;
      k = i + 1;
    }
  }
  (void)k;
  for (double& x : v) x = std::max(0.0, x - theta);
  // Guard against accumulated rounding.
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= sum;
  return v;
}

}  // namespace cwc
