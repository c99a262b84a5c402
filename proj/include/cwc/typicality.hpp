#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cwc/channel.hpp"
#include "cwc/common.hpp"
#include "cwc/distribution.hpp"

namespace cwc {

// Typicality convention used throughout: frequency (strong) typicality with
// the zero-frequency side condition. x^n is typical for p iff
// |N(a|x^n)/n − p(a)| ≤ δ for every symbol a, and N(a|x^n) = 0 wherever
// p(a) = 0. Conditional typicality is the joint-frequency version:
// z^n ∈ T_{V,δ}(x^n) iff |N(a,c)/n − V(c|a)·N(a|x^n)/n| ≤ δ for every pair
// (a,c), and N(a,c) = 0 wherever V(c|a) = 0.

struct TypicalityParams {
  double delta;
  unsigned n;

  TypicalityParams(double d, unsigned blocklength) : delta(d), n(blocklength) {
    if (!(delta > 0.0)) throw std::invalid_argument("TypicalityParams: delta must be > 0");
    if (n < 1) throw std::invalid_argument("TypicalityParams: n must be >= 1");
  }
};

using Seq = std::uint64_t;

inline unsigned seq_symbol(Seq s, unsigned i, std::size_t alphabet) {
  for (unsigned k = 0; k < i; ++k) s /= alphabet;
  return static_cast<unsigned>(s % alphabet);
}

inline std::vector<unsigned> seq_symbols(Seq s, unsigned n, std::size_t alphabet) {
  std::vector<unsigned> out(n);
  for (unsigned i = 0; i < n; ++i) {
    out[i] = static_cast<unsigned>(s % alphabet);
    s /= alphabet;
  }
  return out;
}

inline std::vector<unsigned> symbol_counts(Seq s, unsigned n, std::size_t alphabet) {
  std::vector<unsigned> counts(alphabet, 0);
  for (unsigned i = 0; i < n; ++i) {
    ++counts[s % alphabet];
    s /= alphabet;
  }
  return counts;
}

inline double sequence_probability(const Distribution& p, Seq s, unsigned n) {
  double prob = 1.0;
  for (unsigned i = 0; i < n; ++i) {
    prob *= p[s % p.size()];
    s /= p.size();
  }
  return prob;
}

inline double conditional_sequence_probability(const Channel& ch, Seq z, Seq x, unsigned n) {
  double prob = 1.0;
  for (unsigned i = 0; i < n; ++i) {
    prob *= ch(z % ch.output_size(), x % ch.input_size());
    z /= ch.output_size();
    x /= ch.input_size();
  }
  return prob;
}

inline bool is_typical(const Distribution& p, Seq s, const TypicalityParams& params) {
  const auto counts = symbol_counts(s, params.n, p.size());
  const double n = static_cast<double>(params.n);
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] == 0.0 && counts[a] != 0) return false;
    if (std::abs(counts[a] / n - p[a]) > params.delta + 1e-15) return false;
  }
  return true;
}

inline bool is_conditionally_typical(const Channel& ch, Seq z, Seq x,
                                     const TypicalityParams& params) {
  const std::size_t in = ch.input_size(), out = ch.output_size();
  std::vector<unsigned> joint(in * out, 0), xcounts(in, 0);
  Seq zr = z, xr = x;
  for (unsigned i = 0; i < params.n; ++i) {
    const auto a = static_cast<std::size_t>(xr % in);
    const auto c = static_cast<std::size_t>(zr % out);
    ++joint[a * out + c];
    ++xcounts[a];
    xr /= in;
    zr /= out;
  }
  const double n = static_cast<double>(params.n);
  for (std::size_t a = 0; a < in; ++a)
    for (std::size_t c = 0; c < out; ++c) {
      const double v = ch(c, a);
      if (v == 0.0 && joint[a * out + c] != 0) return false;
      if (std::abs(joint[a * out + c] / n - v * xcounts[a] / n) > params.delta + 1e-15)
        return false;
    }
  return true;
}

/// Exact enumeration of T^n_{p,δ}.
inline std::vector<Seq> typical_set(const Distribution& p, const TypicalityParams& params,
                                    std::uint64_t budget = kDefaultOutcomeBudget) {
  check_budget(p.size(), params.n, budget);
  const Seq total = pow_u64(p.size(), params.n);
  std::vector<Seq> out;
  for (Seq s = 0; s < total; ++s)
    if (is_typical(p, s, params)) out.push_back(s);
  return out;
}

/// Exact enumeration of T^n_{V,δ}(x^n).
inline std::vector<Seq> conditional_typical_set(const Channel& channel, Seq x_n,
                                                const TypicalityParams& params,
                                                std::uint64_t budget = kDefaultOutcomeBudget) {
  check_budget(channel.output_size(), params.n, budget);
  const Seq total = pow_u64(channel.output_size(), params.n);
  std::vector<Seq> out;
  for (Seq z = 0; z < total; ++z)
    if (is_conditionally_typical(channel, z, x_n, params)) out.push_back(z);
  return out;
}

/// p^{⊗n} restricted to the typical set and renormalized (truncated input).
/// Carries the enumerated support and its cumulative mass for reproducible
/// sampling.
struct TruncatedInput {
  Distribution base;
  TypicalityParams params;
  std::vector<Seq> support;
  std::vector<double> mass;        // renormalized, sums to 1 over support
  std::vector<double> cumulative;  // running sums of mass
  double typical_mass;             // p^{⊗n}(T^n_{p,δ}) before renormalization

  Seq sample(double u) const {
    // u in [0,1): inverse-CDF over the enumerated support.
    std::size_t lo = 0, hi = support.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] > u)
        hi = mid;
      else
        lo = mid + 1;
    }
    return support[lo];
  }
};

inline TruncatedInput build_truncated_input(const Distribution& p, const TypicalityParams& params,
                                            std::uint64_t budget = kDefaultOutcomeBudget) {
  auto support = typical_set(p, params, budget);
  if (support.empty())
    throw std::invalid_argument("build_truncated_input: empty typical set (delta too small)");
  std::vector<double> mass(support.size());
  double total = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    mass[i] = sequence_probability(p, support[i], params.n);
    total += mass[i];
  }
  std::vector<double> cumulative(support.size());
  double run = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    mass[i] /= total;
    run += mass[i];
    cumulative[i] = run;
  }
  cumulative.back() = 1.0;
  return TruncatedInput{p, params, std::move(support), std::move(mass), std::move(cumulative),
                        total};
}

}  // namespace cwc
