#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cwc/common.hpp"
#include "cwc/distribution.hpp"

namespace cwc {

/// Row-stochastic matrix from a finite input alphabet to a finite output
/// alphabet. Each row is validated as a Distribution on construction.
class Channel {
 public:
  explicit Channel(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("Channel: no rows");
    const std::size_t cols = rows_[0].size();
    for (const auto& r : rows_) {
      if (r.size() != cols) throw std::invalid_argument("Channel: ragged rows");
      Distribution check(r);  // validates non-negativity and unit sum
      (void)check;
    }
  }

  static Channel identity(std::size_t size) {
    std::vector<std::vector<double>> rows(size, std::vector<double>(size, 0.0));
    for (std::size_t i = 0; i < size; ++i) rows[i][i] = 1.0;
    return Channel(std::move(rows));
  }

  std::size_t input_size() const { return rows_.size(); }
  std::size_t output_size() const { return rows_[0].size(); }
  double operator()(std::size_t out, std::size_t in) const { return rows_[in][out]; }
  const std::vector<double>& row(std::size_t in) const { return rows_[in]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  std::vector<std::vector<double>> rows_;
};

/// Binary symmetric channel with crossover probability eta.
inline Channel bsc(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("bsc: eta outside [0,1]");
  return Channel({{1.0 - eta, eta}, {eta, 1.0 - eta}});
}

/// Matrix product of two channels: (first ∘ second)(c|a) = Σ_b first(b|a) second(c|b).
inline Channel compose(const Channel& first, const Channel& second) {
  if (first.output_size() != second.input_size())
    throw std::invalid_argument("compose: dimension mismatch");
  std::vector<std::vector<double>> rows(first.input_size(),
                                        std::vector<double>(second.output_size(), 0.0));
  for (std::size_t a = 0; a < first.input_size(); ++a)
    for (std::size_t b = 0; b < first.output_size(); ++b) {
      const double w = first(b, a);
      if (w == 0.0) continue;
      for (std::size_t c = 0; c < second.output_size(); ++c) rows[a][c] += w * second(c, b);
    }
  return Channel(std::move(rows));
}

inline Channel convex_combine(const std::vector<Channel>& channels, const Distribution& weights) {
  if (channels.empty()) throw std::invalid_argument("convex_combine: empty channel list");
  if (weights.size() != channels.size())
    throw std::invalid_argument("convex_combine: weight count mismatch");
  const std::size_t in = channels[0].input_size();
  const std::size_t out = channels[0].output_size();
  for (const auto& ch : channels)
    if (ch.input_size() != in || ch.output_size() != out)
      throw std::invalid_argument("convex_combine: dimension mismatch");
  std::vector<std::vector<double>> rows(in, std::vector<double>(out, 0.0));
  for (std::size_t k = 0; k < channels.size(); ++k)
    for (std::size_t a = 0; a < in; ++a)
      for (std::size_t c = 0; c < out; ++c) rows[a][c] += weights[k] * channels[k](c, a);
  return Channel(std::move(rows));
}

/// n-th memoryless extension W^{⊗n}(y^n|x^n) = Π_i W(y_i|x_i).
/// Sequences are indexed with digit i least significant first: symbol i of
/// index s is (s / size^i) % size.
inline Channel product_extension(const Channel& channel, unsigned n,
                                 std::uint64_t budget = kDefaultOutcomeBudget) {
  if (n < 1) throw std::invalid_argument("product_extension: n must be >= 1");
  check_budget(channel.input_size(), n, budget);
  check_budget(channel.output_size(), n, budget);
  const std::size_t in = pow_u64(channel.input_size(), n);
  const std::size_t out = pow_u64(channel.output_size(), n);
  std::vector<std::vector<double>> rows(in, std::vector<double>(out));
  for (std::size_t x = 0; x < in; ++x) {
    for (std::size_t y = 0; y < out; ++y) {
      double prob = 1.0;
      std::size_t xr = x, yr = y;
      for (unsigned i = 0; i < n; ++i) {
        prob *= channel(yr % channel.output_size(), xr % channel.input_size());
        xr /= channel.input_size();
        yr /= channel.output_size();
      }
      rows[x][y] = prob;
    }
  }
  return Channel(std::move(rows));
}

inline Distribution output_distribution(const Distribution& p, const Channel& channel) {
  if (p.size() != channel.input_size())
    throw std::invalid_argument("output_distribution: dimension mismatch");
  std::vector<double> q(channel.output_size(), 0.0);
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] == 0.0) continue;
    for (std::size_t b = 0; b < q.size(); ++b) q[b] += p[a] * channel(b, a);
  }
  // Clean up rounding so the result passes Distribution validation.
  return Distribution::normalized(std::move(q));
}

struct DegradationWitness {
  Channel kernel;   // stochastic D with base·D ≈ target
  double residual;  // max-abs entrywise residual of the product
};

inline constexpr double kDegradationTol = 1e-9;

namespace detail {

inline Eigen::MatrixXd to_eigen(const Channel& ch) {
  Eigen::MatrixXd m(ch.input_size(), ch.output_size());
  for (std::size_t a = 0; a < ch.input_size(); ++a)
    for (std::size_t b = 0; b < ch.output_size(); ++b) m(a, b) = ch(b, a);
  return m;
}

inline double max_abs_residual(const Eigen::MatrixXd& base, const Eigen::MatrixXd& d,
                               const Eigen::MatrixXd& target) {
  return (base * d - target).cwiseAbs().maxCoeff();
}

inline void project_rows_to_simplex(Eigen::MatrixXd& d) {
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    std::vector<double> row(d.cols());
    for (Eigen::Index c = 0; c < d.cols(); ++c) row[c] = d(r, c);
    row = project_to_simplex(std::move(row));
    for (Eigen::Index c = 0; c < d.cols(); ++c) d(r, c) = row[c];
  }
}

}  // namespace detail

/// Searches for a stochastic kernel D with base·D = target (degradation in
/// the sense of a physically degraded eavesdropper). Solves the convex
/// feasibility program min ||base·D − target|| over row-stochastic D by an
/// unconstrained least-squares warm start followed by accelerated projected
/// gradient; accepts when the max-abs residual is within tol. Absence of a
/// witness is a valid result, not an error.
inline std::optional<DegradationWitness> find_degradation(const Channel& base,
                                                          const Channel& target,
                                                          double tol = kDegradationTol) {
  if (base.input_size() != target.input_size())
    throw std::invalid_argument("find_degradation: input alphabets differ");
  const Eigen::MatrixXd w = detail::to_eigen(base);
  const Eigen::MatrixXd v = detail::to_eigen(target);

  auto accept = [&](const Eigen::MatrixXd& d) -> std::optional<DegradationWitness> {
    // Row-stochastic check with a little slack; the product check is the contract.
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
      double sum = 0.0;
      for (Eigen::Index c = 0; c < d.cols(); ++c) {
        if (d(r, c) < -1e-12) return std::nullopt;
        sum += d(r, c);
      }
      if (std::abs(sum - 1.0) > 1e-9) return std::nullopt;
    }
    const double res = detail::max_abs_residual(w, d, v);
    if (res > tol) return std::nullopt;
    std::vector<std::vector<double>> rows(d.rows());
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
      std::vector<double> row(d.cols());
      double sum = 0.0;
      for (Eigen::Index c = 0; c < d.cols(); ++c) {
        row[c] = std::max(0.0, d(r, c));
        sum += row[c];
      }
      for (double& x : row) x /= sum;
      rows[r] = std::move(row);
    }
    return DegradationWitness{Channel(std::move(rows)), res};
  };

  // Unconstrained least squares often lands on the witness directly.
  Eigen::MatrixXd d0 = w.colPivHouseholderQr().solve(v);
  if (auto hit = accept(d0)) return hit;

  // FISTA on ½||wD − v||² with per-row simplex projection.
  Eigen::MatrixXd d = d0;
  detail::project_rows_to_simplex(d);
  Eigen::MatrixXd y = d, d_prev = d;
  const double lip = (w.transpose() * w).operatorNorm();
  const double step = 1.0 / std::max(lip, 1e-30);
  double t_prev = 1.0;
  for (int it = 0; it < 20000; ++it) {
    Eigen::MatrixXd grad = w.transpose() * (w * y - v);
    d = y - step * grad;
    detail::project_rows_to_simplex(d);
    const double t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
    y = d + ((t_prev - 1.0) / t) * (d - d_prev);
    d_prev = d;
    t_prev = t;
    if (it % 64 == 0 && detail::max_abs_residual(w, d, v) <= tol * 0.5) break;
  }
  return accept(d);
}

enum class Pairing { Matched, Product };

/// Indexed families {W_t}, {V_s} over a common input alphabet.
struct CompoundWiretap {
  std::vector<Channel> legit;
  std::vector<Channel> eaves;
  Pairing pairing = Pairing::Matched;

  CompoundWiretap(std::vector<Channel> legit_family, std::vector<Channel> eaves_family,
                  Pairing mode)
      : legit(std::move(legit_family)), eaves(std::move(eaves_family)), pairing(mode) {
    if (legit.empty() || eaves.empty())
      throw std::invalid_argument("CompoundWiretap: empty channel family");
    const std::size_t in = legit[0].input_size();
    for (const auto& ch : legit)
      if (ch.input_size() != in)
        throw std::invalid_argument("CompoundWiretap: legit input alphabets differ");
    for (const auto& ch : eaves)
      if (ch.input_size() != in)
        throw std::invalid_argument("CompoundWiretap: eaves input alphabets differ");
    if (pairing == Pairing::Matched && legit.size() != eaves.size())
      throw std::invalid_argument("CompoundWiretap: matched pairing requires |legit| == |eaves|");
  }

  std::size_t input_size() const { return legit[0].input_size(); }
  std::size_t num_legit() const { return legit.size(); }
  std::size_t num_eaves() const { return eaves.size(); }
};

}  // namespace cwc
