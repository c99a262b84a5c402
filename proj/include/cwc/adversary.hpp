#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cwc/channel.hpp"
#include "cwc/codelab.hpp"
#include "cwc/common.hpp"
#include "cwc/info.hpp"

namespace cwc {

namespace detail {

/// Per-message eavesdropper output distributions V̂_{t,j} for one state,
/// dense over C^n, plus the uniform-message mixture.
struct EavesView {
  std::vector<std::vector<double>> per_msg;
  std::vector<double> mixture;
};

inline EavesView eaves_view(const Codebook& codebook, const Channel& eaves, std::size_t state,
                            std::uint64_t budget = kDefaultOutcomeBudget) {
  check_budget(eaves.output_size(), codebook.n, budget);
  const std::size_t total = pow_u64(eaves.output_size(), codebook.n);
  const std::size_t word_state = std::min(state, codebook.num_states() - 1);
  const std::size_t J = codebook.message_count;
  const std::size_t L = codebook.randomisation[word_state];
  EavesView view;
  view.per_msg.assign(J, std::vector<double>(total, 0.0));
  view.mixture.assign(total, 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t l = 0; l < L; ++l) {
      const Seq x = codebook.words[word_state][j][l];
      for (std::size_t z = 0; z < total; ++z)
        view.per_msg[j][z] += conditional_sequence_probability(eaves, z, x, codebook.n);
    }
    for (std::size_t z = 0; z < total; ++z) {
      view.per_msg[j][z] /= static_cast<double>(L);
      view.mixture[z] += view.per_msg[j][z] / static_cast<double>(J);
    }
  }
  return view;
}

inline double measured_leakage(const EavesView& view) {
  auto ent = [](const std::vector<double>& d) {
    double h = 0.0;
    for (double x : d)
      if (x > 0.0) h -= x * std::log2(x);
    return h;
  };
  const double h_mix = ent(view.mixture);
  double leak = 0.0;
  for (const auto& d : view.per_msg) leak += (h_mix - ent(d)) / static_cast<double>(view.per_msg.size());
  return std::max(0.0, leak);
}

}  // namespace detail

struct DecodingAttackReport {
  double avg_error = 0.0;          // exact MAP average error, the best any decoder can do
  double pinsker_lower_bound = 0.0;  // 1 − 1/J − c√ε
  double epsilon_used = 0.0;       // measured I(J;Z^n) in bits
};

/// Maximum-a-posteriori eavesdropper decoding for uniform J and the actual
/// stochastic encoder: partitions C^n by argmax_j V̂_{t,j}(z) (ties toward
/// the smaller message index) and evaluates the exact average error, the
/// binding point of the Pinsker-derived bound.
inline DecodingAttackReport best_decoding_attack(const Codebook& codebook, const Channel& eaves,
                                                 std::size_t state,
                                                 std::uint64_t budget = kDefaultOutcomeBudget) {
  const auto view = detail::eaves_view(codebook, eaves, state, budget);
  const std::size_t J = codebook.message_count;
  DecodingAttackReport report;
  report.epsilon_used = detail::measured_leakage(view);
  double correct = 0.0;
  for (std::size_t z = 0; z < view.mixture.size(); ++z) {
    double best = -1.0;
    for (std::size_t j = 0; j < J; ++j)
      if (view.per_msg[j][z] > best) best = view.per_msg[j][z];
    correct += best / static_cast<double>(J);
  }
  report.avg_error = 1.0 - correct;
  report.pinsker_lower_bound =
      1.0 - 1.0 / static_cast<double>(J) - kPinskerConstant * std::sqrt(report.epsilon_used);
  return report;
}

struct IdentificationAttackReport {
  std::vector<double> g;       // per message, exact optimal g(j,t) ∈ [0,2]
  double average = 0.0;        // (1/J) Σ_j g(j,t)
  double pinsker_lower_bound = 0.0;  // 1 − c√ε (2J−1)/(J−1)
  double epsilon_used = 0.0;
};

/// Per-message identification test: person F_j tests "was j sent?" with the
/// optimal acceptance region (the likelihood-ratio test of V̂_{t,j} against
/// the leave-one-out mixture), giving the smallest achievable sum of
/// first- and second-kind errors g(j,t).
inline IdentificationAttackReport identification_attack(const Codebook& codebook,
                                                        const Channel& eaves, std::size_t state,
                                                        std::uint64_t budget = kDefaultOutcomeBudget) {
  const std::size_t J = codebook.message_count;
  if (J < 2)
    throw std::invalid_argument("identification_attack: needs at least two messages");
  const auto view = detail::eaves_view(codebook, eaves, state, budget);
  IdentificationAttackReport report;
  report.epsilon_used = detail::measured_leakage(view);
  for (std::size_t j = 0; j < J; ++j) {
    // g(j) = P_j(K^c) + M_j(K) with M_j the leave-one-out mixture; the
    // minimizing K keeps exactly the points where P_j strictly dominates.
    double g = 1.0;
    for (std::size_t z = 0; z < view.mixture.size(); ++z) {
      const double m =
          (view.mixture[z] * static_cast<double>(J) - view.per_msg[j][z]) /
          static_cast<double>(J - 1);
      if (view.per_msg[j][z] > m) g -= view.per_msg[j][z] - m;
    }
    report.g.push_back(g);
    report.average += g / static_cast<double>(J);
  }
  report.pinsker_lower_bound =
      1.0 - kPinskerConstant * std::sqrt(report.epsilon_used) *
                (2.0 * static_cast<double>(J) - 1.0) / (static_cast<double>(J) - 1.0);
  return report;
}

}  // namespace cwc
