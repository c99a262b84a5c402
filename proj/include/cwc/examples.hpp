#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "cwc/capacity.hpp"
#include "cwc/channel.hpp"
#include "cwc/common.hpp"
#include "cwc/info.hpp"

namespace cwc {

/// Two-state scenario: W0 = bsc(eta), V0 = bsc(tau)∘W0, W1 = bsc(tau_hat)∘V0,
/// V1 = bsc(1/2). Messages alone cross at rate I(p0,W0) − I(p0,V0) − nu while
/// the (message, randomisation) pair rate I(p0,W0) − 3nu/4 exceeds what the
/// weaker legitimate channel W1 can carry at all.
inline nlohmann::json run_example1(double eta = 0.01, double tau = 0.05, double tau_hat = 0.45,
                                   double nu = 0.01, unsigned grid = 1000) {
  const Channel w0 = bsc(eta);
  const Channel v0 = compose(bsc(tau), w0);
  const Channel w1 = compose(bsc(tau_hat), v0);
  const Channel v1 = bsc(0.5);
  const Distribution p0 = Distribution::uniform(2);

  const double i_w0 = mutual_information(p0, w0);
  const double i_v0 = mutual_information(p0, v0);
  double max_i_w1 = 0.0, max_i_v1 = 0.0;
  for (unsigned k = 0; k <= grid; ++k) {
    const double q = static_cast<double>(k) / grid;
    const Distribution p({q, 1.0 - q});
    max_i_w1 = std::max(max_i_w1, mutual_information(p, w1));
    max_i_v1 = std::max(max_i_v1, mutual_information(p, v1));
  }
  const double pair_rate = i_w0 - 0.75 * nu;
  const double message_rate = i_w0 - i_v0 - nu;

  nlohmann::json report;
  report["schema_version"] = 1;
  report["library_version"] = kLibraryVersion;
  report["config"] = {{"eta", eta}, {"tau", tau}, {"tau_hat", tau_hat}, {"nu", nu}, {"grid", grid}};
  report["channels"] = {{"w0_crossover", eta},
                        {"v0_crossover", eta + tau - 2.0 * eta * tau},
                        {"w1_crossover", w1(1, 0)},
                        {"v1_crossover", 0.5}};
  report["i_p0_w0"] = i_w0;
  report["i_p0_v0"] = i_v0;
  report["max_i_w1"] = max_i_w1;
  report["max_i_v1"] = max_i_v1;
  report["pair_rate"] = pair_rate;
  report["message_rate"] = message_rate;
  report["checks"] = {
      {"eaves_state1_carries_nothing", max_i_v1 <= 1e-12},
      {"pair_rate_exceeds_weak_legit_capacity", pair_rate > max_i_w1 + 1e-3},
      {"message_rate_positive", message_rate > 1e-3},
  };
  return report;
}

/// Crossover of W_t = (1−t)W0 + tW1 with W0 = bsc(eta), W1 = bsc(2τ−2τ²)∘W0.
inline double example2_f(double t, double eta, double tau) {
  const double g = t * (2.0 * tau - 2.0 * tau * tau);
  return eta + g - 2.0 * eta * g;
}

/// Convex family W_t = (1−t)W0 + tW1, V_t = bsc(tau)∘W_t on a t grid:
/// positive per-state secrecy rate for every t (CSI side) against a shared-
/// input rate that a single strongest eavesdropper V0 drives to zero (no-CSI
/// side, via degradation of every V_t from V0 and of W1 from V0).
inline nlohmann::json run_example2(double eta = 0.1, double tau = 0.1, unsigned t_points = 21,
                                   unsigned grid = 1000, std::size_t aux_cardinality = 3,
                                   unsigned restarts = 16, std::uint64_t seed = 0) {
  const Channel w0 = bsc(eta);
  const Channel v0 = compose(bsc(tau), w0);
  const Channel w1 = compose(bsc(tau), v0);
  const Channel v1 = compose(bsc(tau), w1);

  std::vector<Channel> legit, eaves;
  nlohmann::json per_t = nlohmann::json::array();
  bool f_matches = true, csi_positive_all = true, degraded_all = true;
  const Distribution p_unif = Distribution::uniform(2);
  for (unsigned k = 0; k < t_points; ++k) {
    const double t = t_points == 1 ? 0.0 : static_cast<double>(k) / (t_points - 1);
    const Distribution mix({1.0 - t, t});
    const Channel w_t = convex_combine({w0, w1}, mix);
    const Channel v_t = convex_combine({v0, v1}, mix);
    const double f = example2_f(t, eta, tau);
    const Channel w_pred = bsc(f);
    double max_dev = 0.0;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c)
        max_dev = std::max(max_dev, std::abs(w_t(c, r) - w_pred(c, r)));
    if (max_dev > 1e-12) f_matches = false;

    const double vf = tau + f - 2.0 * tau * f;
    const double csi_gap = binary_entropy(vf) - binary_entropy(f);
    if (!(csi_gap > 1e-3)) csi_positive_all = false;

    const auto witness = find_degradation(v0, v_t);
    if (!witness) degraded_all = false;

    per_t.push_back({{"t", t},
                     {"f", f},
                     {"w_entrywise_dev", max_dev},
                     {"csi_gap_uniform", csi_gap},
                     {"i_unif_w", mutual_information(p_unif, w_t)},
                     {"i_unif_v", mutual_information(p_unif, v_t)},
                     {"v_degraded_from_v0", witness.has_value()},
                     {"degradation_residual", witness ? witness->residual : -1.0}});
    legit.push_back(w_t);
    eaves.push_back(v_t);
  }

  CompoundWiretap compound(legit, eaves, Pairing::Matched);
  const RateReport csi = csi_rate_no_prefix(compound, grid);
  const RateReport no_csi = no_csi_lower(compound, grid);

  // Converse side: max_p I(p,W1^{⊗n}) − I(p,V0^{⊗n}) stays ≤ 0 at n = 1, 2.
  const auto w1_from_v0 = find_degradation(v0, w1);
  std::vector<double> converse_gap;
  for (unsigned n = 1; n <= 2; ++n) {
    const Channel wn = n == 1 ? w1 : product_extension(w1, n);
    const Channel vn = n == 1 ? v0 : product_extension(v0, n);
    auto objective = [&](const std::vector<double>& probs) {
      Distribution p = Distribution::normalized(std::vector<double>(probs));
      return mutual_information(p, wn) - mutual_information(p, vn);
    };
    auto opt = detail::maximize_on_simplex(wn.input_size(), objective, n == 1 ? grid : 50);
    converse_gap.push_back(opt.value);
  }
  std::vector<double> multiletter;
  const MultiletterLadder ladder = multiletter_ladder(compound, 2, aux_cardinality, restarts, seed);
  for (unsigned n = 1; n <= 2; ++n) multiletter.push_back(ladder.a[n - 1] / n);

  nlohmann::json report;
  report["schema_version"] = 1;
  report["library_version"] = kLibraryVersion;
  report["config"] = {{"eta", eta},          {"tau", tau},
                      {"t_points", t_points}, {"grid", grid},
                      {"aux_cardinality", aux_cardinality}, {"restarts", restarts},
                      {"seed", seed}};
  report["per_t"] = per_t;
  report["csi_rate"] = csi.value;
  report["no_csi_raw"] = no_csi.raw_value;
  report["no_csi_value"] = no_csi.value;
  report["converse_gap"] = converse_gap;
  report["multiletter_rate"] = multiletter;
  report["checks"] = {
      {"w_t_matches_predicted_crossover", f_matches},
      {"csi_gap_positive_all_t", csi_positive_all},
      {"csi_rate_positive", csi.value > 0.0},
      {"v_t_degraded_from_v0_all_t", degraded_all},
      {"w1_degraded_from_v0", w1_from_v0.has_value()},
      {"no_csi_raw_nonpositive", no_csi.raw_value <= 1e-6},
      {"converse_nonpositive_n1_n2",
       converse_gap[0] <= 1e-9 && converse_gap[1] <= 1e-9},
      {"multiletter_rate_zero_n1_n2",
       multiletter[0] <= 1e-6 + 2e-4 && multiletter[1] <= 1e-6 + 2e-4},
  };
  return report;
}

}  // namespace cwc
