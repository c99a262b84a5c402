#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwc/channel.hpp"
#include "cwc/common.hpp"
#include "cwc/distribution.hpp"
#include "cwc/info.hpp"
#include "cwc/rng.hpp"
#include "cwc/typicality.hpp"

namespace cwc {

// The "universal" slack functions of the typicality bounds have no canonical
// numeric form; they are parameters with these defaults. Exact enumerated
// quantities, not the analytic forms, are the source of truth at desk scale.
struct BoundFunctions {
  // f1, f2, f take (delta, |A|, |B|).
  std::function<double(double, std::size_t, std::size_t)> f1 =
      [](double d, std::size_t a, std::size_t b) { return 4.0 * a * b * d; };
  std::function<double(double, std::size_t, std::size_t)> f2 =
      [](double d, std::size_t a, std::size_t b) { return 4.0 * a * b * d; };
  std::function<double(double, std::size_t, std::size_t)> f =
      [](double d, std::size_t a, std::size_t b) { return 8.0 * a * b * d; };
};

/// ε default 2^{−n c' δ²} with c' = 1/(4 ln 2).
inline double default_epsilon(const TypicalityParams& params) {
  const double c_prime = 1.0 / (4.0 * std::log(2.0));
  return std::exp2(-static_cast<double>(params.n) * c_prime * params.delta * params.delta);
}

/// α = 2^{−n(H(pV)+f1(δ))} for the given input and eavesdropper channel.
inline double alpha_bound(const Distribution& p, const Channel& v, const TypicalityParams& params,
                          const BoundFunctions& fns = {}) {
  const double h = entropy(output_distribution(p, v));
  return std::exp2(-static_cast<double>(params.n) *
                   (h + fns.f1(params.delta, p.size(), v.output_size())));
}

/// β = 2^{−n(H(V|p)−f2(δ))}.
inline double beta_bound(const Distribution& p, const Channel& v, const TypicalityParams& params,
                         const BoundFunctions& fns = {}) {
  const double h = conditional_entropy(p, v);
  return std::exp2(-static_cast<double>(params.n) *
                   (h - fns.f2(params.delta, p.size(), v.output_size())));
}

/// Θ'_t(z^n) = Σ_{x∈T} p'(x) V^n(z|x) 1[z ∈ T_{V,δ}(x)], thresholded at
/// ε·α_t to the truncated Θ_t supported on S.
struct ThetaResult {
  std::vector<double> theta;        // dense over C^n, zero off S
  std::vector<double> theta_prime;  // dense over C^n, unthresholded
  std::vector<char> in_s;           // indicator of S
  double alpha = 0.0;
  double epsilon = 0.0;
  double theta_mass = 0.0;  // Σ_{z∈S} Θ_t(z)
  bool mass_guarantee_holds = false;  // Σ ≥ 1 − 2ε (reported, not assumed)
};

inline ThetaResult build_theta(const TruncatedInput& trunc, const Channel& eaves,
                               const TypicalityParams& params, double epsilon,
                               const BoundFunctions& fns = {},
                               std::uint64_t budget = kDefaultOutcomeBudget) {
  check_budget(eaves.output_size(), params.n, budget);
  const std::size_t total = pow_u64(eaves.output_size(), params.n);
  ThetaResult r;
  r.epsilon = epsilon;
  r.alpha = alpha_bound(trunc.base, eaves, params, fns);
  r.theta_prime.assign(total, 0.0);
  for (std::size_t i = 0; i < trunc.support.size(); ++i) {
    const Seq x = trunc.support[i];
    for (Seq z : conditional_typical_set(eaves, x, params, budget))
      r.theta_prime[z] += trunc.mass[i] * conditional_sequence_probability(eaves, z, x, params.n);
  }
  r.in_s.assign(total, 0);
  r.theta.assign(total, 0.0);
  for (std::size_t z = 0; z < total; ++z)
    if (r.theta_prime[z] >= epsilon * r.alpha) {
      r.in_s[z] = 1;
      r.theta[z] = r.theta_prime[z];
      r.theta_mass += r.theta_prime[z];
    }
  r.mass_guarantee_holds = r.theta_mass >= 1.0 - 2.0 * epsilon;
  return r;
}

enum class CodeRegime { Csi, NoCsi, CsiT };

inline const char* regime_name(CodeRegime r) {
  switch (r) {
    case CodeRegime::Csi: return "csi";
    case CodeRegime::NoCsi: return "no-csi";
    default: return "csi-t";
  }
}

struct Codebook {
  // words[t][j][l]: input sequence for legit state t, message j, index l.
  std::vector<std::vector<std::vector<Seq>>> words;
  std::size_t message_count = 0;             // J
  std::vector<std::size_t> randomisation;    // L_t per state
  std::uint64_t seed = 0;
  unsigned n = 0;
  std::size_t input_size = 0;
  CodeRegime regime = CodeRegime::Csi;
  bool rates_formula_scaled = true;
  double message_rate = 0.0;                // log2(J)/n
  std::vector<double> randomisation_rates;  // log2(L_t)/n

  std::size_t num_states() const { return words.size(); }
};

/// Draws the random codebook at the formula-scaled rates: J and L_t are
/// floors of 2^{n(...)} with the regime-appropriate exponents, the words
/// are i.i.d. from the per-state truncated inputs, independent across
/// states, reproducible from the seed alone. At desk-scale n the J floor
/// may be 0; an explicit override is then required and the report is
/// tagged rates_formula_scaled = false.
inline Codebook sample_codebook(const CompoundWiretap& compound,
                                const std::vector<Distribution>& inputs,
                                const TypicalityParams& params, double tau, std::uint64_t seed,
                                CodeRegime regime = CodeRegime::Csi, std::size_t override_J = 0,
                                std::size_t override_L = 0,
                                std::uint64_t budget = kDefaultOutcomeBudget) {
  const std::size_t T = compound.num_legit();
  if (regime == CodeRegime::Csi && compound.pairing != Pairing::Matched)
    throw std::invalid_argument("sample_codebook: csi regime requires matched pairing");
  if (regime != CodeRegime::NoCsi && inputs.size() != T)
    throw std::invalid_argument("sample_codebook: need one input distribution per state");
  if (inputs.empty()) throw std::invalid_argument("sample_codebook: no input distributions");

  const double n = static_cast<double>(params.n);
  double j_exponent = 0.0;
  std::vector<double> l_exponents(T, 0.0);
  if (regime == CodeRegime::Csi) {
    double min_diff = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < T; ++t) {
      const double iw = mutual_information(inputs[t], compound.legit[t]);
      const double iv = mutual_information(inputs[t], compound.eaves[t]);
      min_diff = std::min(min_diff, iw - iv);
      l_exponents[t] = iv + tau / 4.0;
    }
    j_exponent = min_diff - tau;
  } else if (regime == CodeRegime::NoCsi) {
    const Distribution& p = inputs[0];
    double min_w = std::numeric_limits<double>::infinity(), max_v = 0.0;
    for (const auto& w : compound.legit) min_w = std::min(min_w, mutual_information(p, w));
    for (const auto& v : compound.eaves) max_v = std::max(max_v, mutual_information(p, v));
    j_exponent = min_w - max_v - tau;
    for (std::size_t t = 0; t < T; ++t) l_exponents[t] = max_v + tau / 4.0;
  } else {  // CsiT
    if (compound.pairing != Pairing::Product)
      throw std::invalid_argument("sample_codebook: csi-t regime requires product pairing");
    double min_diff = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < T; ++t) {
      const double iw = mutual_information(inputs[t], compound.legit[t]);
      double max_v = 0.0;
      for (const auto& v : compound.eaves)
        max_v = std::max(max_v, mutual_information(inputs[t], v));
      min_diff = std::min(min_diff, iw - max_v);
      l_exponents[t] = max_v + tau / 4.0;
    }
    j_exponent = min_diff - tau;
  }

  Codebook cb;
  cb.seed = seed;
  cb.n = params.n;
  cb.input_size = compound.input_size();
  cb.regime = regime;
  cb.message_count = static_cast<std::size_t>(std::floor(std::exp2(n * j_exponent)));
  cb.randomisation.resize(T);
  for (std::size_t t = 0; t < T; ++t)
    cb.randomisation[t] = static_cast<std::size_t>(std::floor(std::exp2(n * l_exponents[t])));

  if (override_J > 0) {
    if (cb.message_count != override_J) cb.rates_formula_scaled = false;
    cb.message_count = override_J;
  } else if (cb.message_count < 1) {
    throw std::invalid_argument(
        "sample_codebook: J floors to 0 at this blocklength; supply an explicit override");
  }
  for (std::size_t t = 0; t < T; ++t) {
    if (override_L > 0) {
      if (cb.randomisation[t] != override_L) cb.rates_formula_scaled = false;
      cb.randomisation[t] = override_L;
    } else if (cb.randomisation[t] < 1) {
      cb.randomisation[t] = 1;
      cb.rates_formula_scaled = false;
    }
  }
  cb.message_rate = std::log2(static_cast<double>(cb.message_count)) / n;
  for (std::size_t t = 0; t < T; ++t)
    cb.randomisation_rates.push_back(std::log2(static_cast<double>(cb.randomisation[t])) / n);

  // No-CSI uses one state-independent codebook; CSI regimes draw fresh
  // words per state. Keyed draws keep everything order-independent.
  std::vector<TruncatedInput> truncs;
  for (std::size_t t = 0; t < T; ++t) {
    const Distribution& p = regime == CodeRegime::NoCsi ? inputs[0] : inputs[t];
    truncs.push_back(build_truncated_input(p, params, budget));
  }
  CounterRng rng{seed};
  cb.words.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    const std::uint64_t state_key = regime == CodeRegime::NoCsi ? 0 : t;
    cb.words[t].assign(cb.message_count, std::vector<Seq>(cb.randomisation[t]));
    for (std::size_t j = 0; j < cb.message_count; ++j)
      for (std::size_t l = 0; l < cb.randomisation[t]; ++l)
        cb.words[t][j][l] = truncs[state_key].sample(rng.uniform(state_key, j, l));
  }
  return cb;
}

struct DecoderSets {
  std::vector<std::vector<char>> masks;  // per message, indicator over B^n
  std::size_t output_space = 0;

  bool contains(std::size_t j, Seq y) const { return masks[j][y] != 0; }
};

/// D'_j = union over states and randomisation indices of the conditional
/// typical sets of message j's words; D_j = D'_j minus every other D'_{j'}.
/// Universal in the state index and insensitive to the randomisation index
/// by construction; the D_j are pairwise disjoint by the set algebra.
inline DecoderSets build_decoder(const Codebook& codebook,
                                 const std::vector<Channel>& legit_family,
                                 const TypicalityParams& params,
                                 std::uint64_t budget = kDefaultOutcomeBudget) {
  if (legit_family.size() != codebook.num_states())
    throw std::invalid_argument("build_decoder: state count mismatch");
  const std::size_t out = legit_family[0].output_size();
  check_budget(out, params.n, budget);
  const std::size_t total = pow_u64(out, params.n);
  const std::size_t J = codebook.message_count;

  std::vector<std::vector<char>> prelim(J, std::vector<char>(total, 0));
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t s = 0; s < codebook.num_states(); ++s)
      for (Seq x : codebook.words[s][j])
        for (Seq y : conditional_typical_set(legit_family[s], x, params, budget)) prelim[j][y] = 1;

  DecoderSets decoder;
  decoder.output_space = total;
  decoder.masks.assign(J, std::vector<char>(total, 0));
  for (std::size_t y = 0; y < total; ++y) {
    std::size_t hits = 0, owner = 0;
    for (std::size_t j = 0; j < J && hits < 2; ++j)
      if (prelim[j][y]) {
        ++hits;
        owner = j;
      }
    if (hits == 1) decoder.masks[owner][y] = 1;
  }
  return decoder;
}

struct ErrorReport {
  std::vector<double> avg_error;                       // per state, uniform over messages
  std::vector<std::vector<double>> per_message_error;  // [state][message]
};

/// Exact average error: full enumeration of the output space.
inline ErrorReport evaluate_error(const Codebook& codebook, const DecoderSets& decoder,
                                  const std::vector<Channel>& legit_family) {
  ErrorReport report;
  const std::size_t J = codebook.message_count;
  for (std::size_t t = 0; t < codebook.num_states(); ++t) {
    const Channel& w = legit_family[t];
    const std::size_t L = codebook.randomisation[t];
    std::vector<double> per_msg(J, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
      double err = 0.0;
      for (std::size_t l = 0; l < L; ++l) {
        double correct = 0.0;
        for (std::size_t y = 0; y < decoder.output_space; ++y)
          if (decoder.masks[j][y])
            correct += conditional_sequence_probability(w, y, codebook.words[t][j][l], codebook.n);
        err += 1.0 - correct;
      }
      per_msg[j] = err / static_cast<double>(L);
    }
    double avg = 0.0;
    for (double e : per_msg) avg += e;
    report.avg_error.push_back(avg / static_cast<double>(J));
    report.per_message_error.push_back(std::move(per_msg));
  }
  return report;
}

struct ExpurgationResult {
  Codebook codebook;    // kept messages, relabeled
  DecoderSets decoder;  // matching masks
  std::vector<std::size_t> kept;
  double removed_fraction = 0.0;
  double max_error = 0.0;  // post-expurgation max per-message error over states
  bool empty = false;
};

/// Removes every message whose per-state error exceeds √η in any state
/// (B = ∪_t G_t^c) and relabels. All-removed is a valid (empty) result.
inline ExpurgationResult expurgate(const Codebook& codebook, const DecoderSets& decoder,
                                   const std::vector<Channel>& legit_family, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("expurgate: eta outside (0,1]");
  const double threshold = std::sqrt(eta);
  const ErrorReport errors = evaluate_error(codebook, decoder, legit_family);
  const std::size_t J = codebook.message_count;

  ExpurgationResult result;
  for (std::size_t j = 0; j < J; ++j) {
    bool keep = true;
    for (std::size_t t = 0; t < codebook.num_states() && keep; ++t)
      if (errors.per_message_error[t][j] > threshold) keep = false;
    if (keep) result.kept.push_back(j);
  }
  result.removed_fraction = static_cast<double>(J - result.kept.size()) / static_cast<double>(J);
  result.empty = result.kept.empty();

  result.codebook = codebook;
  result.decoder.output_space = decoder.output_space;
  result.codebook.words.assign(codebook.num_states(), {});
  result.decoder.masks.clear();
  result.codebook.message_count = result.kept.size();
  for (std::size_t t = 0; t < codebook.num_states(); ++t)
    for (std::size_t j : result.kept) result.codebook.words[t].push_back(codebook.words[t][j]);
  for (std::size_t j : result.kept) result.decoder.masks.push_back(decoder.masks[j]);
  for (std::size_t t = 0; t < codebook.num_states(); ++t)
    for (std::size_t j : result.kept)
      result.max_error = std::max(result.max_error, errors.per_message_error[t][j]);
  if (result.empty) result.codebook.message_rate = 0.0;
  return result;
}

struct LeakageReport {
  std::vector<double> leakage_bits;  // per state, exact I(J;Z^n) under uniform J
  std::vector<double> max_tv;        // per state, max_j ||V̂_{t,j} − V̄_t||
};

/// Exact leakage by full enumeration of the eavesdropper output space.
inline LeakageReport evaluate_leakage(const Codebook& codebook,
                                      const std::vector<Channel>& eaves_family,
                                      std::uint64_t budget = kDefaultOutcomeBudget) {
  LeakageReport report;
  const std::size_t J = codebook.message_count;
  for (std::size_t t = 0; t < eaves_family.size(); ++t) {
    const Channel& v = eaves_family[t];
    // For no-CSI codebooks the word set is shared; state index still picks
    // the eavesdropper channel.
    const std::size_t word_state = std::min(t, codebook.num_states() - 1);
    check_budget(v.output_size(), codebook.n, budget);
    const std::size_t total = pow_u64(v.output_size(), codebook.n);
    const std::size_t L = codebook.randomisation[word_state];
    std::vector<std::vector<double>> per_msg(J, std::vector<double>(total, 0.0));
    std::vector<double> mixture(total, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
      for (std::size_t l = 0; l < L; ++l) {
        const Seq x = codebook.words[word_state][j][l];
        for (std::size_t z = 0; z < total; ++z)
          per_msg[j][z] += conditional_sequence_probability(v, z, x, codebook.n);
      }
      for (std::size_t z = 0; z < total; ++z) {
        per_msg[j][z] /= static_cast<double>(L);
        mixture[z] += per_msg[j][z] / static_cast<double>(J);
      }
    }
    auto ent = [](const std::vector<double>& d) {
      double h = 0.0;
      for (double x : d)
        if (x > 0.0) h -= x * std::log2(x);
      return h;
    };
    double leak = 0.0, tv = 0.0;
    const double h_mix = ent(mixture);
    for (std::size_t j = 0; j < J; ++j) {
      leak += (h_mix - ent(per_msg[j])) / static_cast<double>(J);
      double d = 0.0;
      for (std::size_t z = 0; z < total; ++z) d += std::abs(per_msg[j][z] - mixture[z]);
      tv = std::max(tv, d);
    }
    report.leakage_bits.push_back(std::max(0.0, leak));
    report.max_tv.push_back(tv);
  }
  return report;
}

struct ChernoffDiagnostics {
  // held[t][j]: whether ι_j(t) held for this codebook.
  std::vector<std::vector<char>> held;
};

/// Checks the randomisation-averaging events: for every z, the empirical
/// average of Q_{t,x_{jl}} lies in [(1±ε)Θ_t(z)].
inline ChernoffDiagnostics check_chernoff_events(const Codebook& codebook,
                                                 const std::vector<Channel>& eaves_family,
                                                 const std::vector<ThetaResult>& thetas,
                                                 const TypicalityParams& params, double epsilon,
                                                 const BoundFunctions& fns = {}) {
  ChernoffDiagnostics diag;
  const std::size_t J = codebook.message_count;
  for (std::size_t t = 0; t < eaves_family.size(); ++t) {
    const Channel& v = eaves_family[t];
    const ThetaResult& theta = thetas[t];
    const std::size_t word_state = std::min(t, codebook.num_states() - 1);
    const std::size_t L = codebook.randomisation[word_state];
    const std::size_t total = theta.theta.size();
    std::vector<char> held_t(J, 1);
    for (std::size_t j = 0; j < J; ++j) {
      std::vector<double> q_avg(total, 0.0);
      for (std::size_t l = 0; l < L; ++l) {
        const Seq x = codebook.words[word_state][j][l];
        for (Seq z : conditional_typical_set(v, x, params))
          if (theta.in_s[z])
            q_avg[z] += conditional_sequence_probability(v, z, x, codebook.n) /
                        static_cast<double>(L);
      }
      for (std::size_t z = 0; z < total && held_t[j]; ++z) {
        const double lo = (1.0 - epsilon) * theta.theta[z];
        const double hi = (1.0 + epsilon) * theta.theta[z];
        if (q_avg[z] < lo - 1e-15 || q_avg[z] > hi + 1e-15) held_t[j] = 0;
      }
    }
    diag.held.push_back(std::move(held_t));
  }
  (void)fns;
  return diag;
}

/// Union bound for the per-message averaging events: 2|C|^n exp(−L ε² μ / 3) with
/// μ = β^{-1}·ε·α (the variables are β^{-1}Q ∈ [0,1]).
inline double chernoff_event_bound(const Distribution& p, const Channel& eaves,
                                   const TypicalityParams& params, double epsilon, std::size_t L,
                                   const BoundFunctions& fns = {}) {
  const double alpha = alpha_bound(p, eaves, params, fns);
  const double beta = beta_bound(p, eaves, params, fns);
  const double mu = epsilon * alpha / beta;
  const double outputs = std::pow(static_cast<double>(eaves.output_size()),
                                  static_cast<double>(params.n));
  return std::min(1.0, 2.0 * outputs * std::exp(-static_cast<double>(L) * epsilon * epsilon * mu / 3.0));
}

struct BoundBundle {
  double alpha = 0.0;
  double beta = 0.0;
  double lemma3_rhs = 0.0;
  // Exact counterparts, by enumeration:
  std::uint64_t typical_output_count = 0;  // |T^n_{pV,2|A|δ}|
  double max_conditional_prob = 0.0;       // max V^n(z|x) over typical pairs
  double max_output_mass = 0.0;            // max_x q^{⊗n}(T^n_{W,δ}(x))
};

/// Parametric α/β/output bounds alongside the exact quantities they bound.
inline BoundBundle analytic_bounds(const Distribution& p, const Channel& w, const Channel& v,
                                   const TypicalityParams& params, const BoundFunctions& fns = {},
                                   std::uint64_t budget = kDefaultOutcomeBudget) {
  const double lemma3_limit = 1.0 / (4.0 * static_cast<double>(p.size() * w.output_size()));
  if (!(params.delta < lemma3_limit))
    throw std::invalid_argument("analytic_bounds: delta must be < 1/(4|A||B|)");

  BoundBundle bundle;
  bundle.alpha = alpha_bound(p, v, params, fns);
  bundle.beta = beta_bound(p, v, params, fns);
  const double n = static_cast<double>(params.n);
  bundle.lemma3_rhs =
      std::pow(n + 1.0, static_cast<double>(p.size() * w.output_size())) *
      std::exp2(-n * (mutual_information(p, w) - fns.f(params.delta, p.size(), w.output_size())));

  const Distribution pv = output_distribution(p, v);
  const TypicalityParams wide(2.0 * static_cast<double>(p.size()) * params.delta, params.n);
  bundle.typical_output_count = typical_set(pv, wide, budget).size();

  const Distribution q = output_distribution(p, w);
  for (Seq x : typical_set(p, params, budget)) {
    for (Seq z : conditional_typical_set(v, x, params, budget))
      bundle.max_conditional_prob =
          std::max(bundle.max_conditional_prob, conditional_sequence_probability(v, z, x, params.n));
    double mass = 0.0;
    for (Seq y : conditional_typical_set(w, x, params, budget))
      mass += sequence_probability(q, y, params.n);
    bundle.max_output_mass = std::max(bundle.max_output_mass, mass);
  }
  return bundle;
}

}  // namespace cwc
