#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cwc/channel.hpp"
#include "cwc/info.hpp"
#include "cwc/rng.hpp"

using namespace cwc;

namespace {

Channel random_channel(std::size_t in, std::size_t out, std::uint64_t seed) {
  CounterRng rng{seed};
  std::vector<std::vector<double>> rows(in, std::vector<double>(out));
  for (std::size_t a = 0; a < in; ++a) {
    double sum = 0.0;
    for (std::size_t b = 0; b < out; ++b) {
      rows[a][b] = 0.02 - std::log(1.0 - rng.uniform(a, b, 1));
      sum += rows[a][b];
    }
    for (double& x : rows[a]) x /= sum;
  }
  return Channel(std::move(rows));
}

JointDistribution random_joint(std::size_t r, std::size_t c, std::uint64_t seed) {
  CounterRng rng{seed};
  std::vector<std::vector<double>> probs(r, std::vector<double>(c));
  double sum = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      probs[i][j] = -std::log(1.0 - rng.uniform(i, j, 2));
      sum += probs[i][j];
    }
  for (auto& row : probs)
    for (double& x : row) x /= sum;
  return JointDistribution(std::move(probs));
}

}  // namespace

TEST_CASE("entropy basics") {
  CHECK(entropy(Distribution::uniform(4)) == Catch::Approx(2.0));
  CHECK(entropy(Distribution::point_mass(0, 2)) == 0.0);
  CHECK(entropy(Distribution({0.11, 0.89})) == Catch::Approx(0.499916).margin(1e-5));
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == Catch::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(0.2) == Catch::Approx(0.7219).margin(1e-4));
  CHECK_THROWS_AS(binary_entropy(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.01), std::invalid_argument);
  // Strictly increasing on [0, 1/2].
  double prev = binary_entropy(0.0);
  for (int i = 1; i <= 50; ++i) {
    const double h = binary_entropy(i / 100.0);
    CHECK(h > prev);
    prev = h;
  }
  CHECK(binary_entropy(0.3) == Catch::Approx(binary_entropy(0.7)));
}

TEST_CASE("conditional entropy") {
  CHECK(conditional_entropy(Distribution::uniform(3), Channel::identity(3)) == 0.0);
  CHECK(conditional_entropy(Distribution::uniform(2), bsc(0.23)) ==
        Catch::Approx(binary_entropy(0.23)));
  CHECK(conditional_entropy(Distribution({0.25, 0.75}), bsc(0.3)) ==
        Catch::Approx(binary_entropy(0.3)));
  CHECK_THROWS_AS(conditional_entropy(Distribution::uniform(3), bsc(0.1)), std::invalid_argument);
}

TEST_CASE("mutual information basics") {
  for (int i = 0; i <= 20; ++i) {
    const Distribution p({i / 20.0, 1.0 - i / 20.0});
    CHECK(mutual_information(p, bsc(0.5)) <= 1e-12);
  }
  CHECK(mutual_information(Distribution::uniform(2), bsc(0.11)) ==
        Catch::Approx(1.0 - binary_entropy(0.11)));
  CHECK(mutual_information(Distribution::point_mass(1, 2), random_channel(2, 4, 3)) <= 1e-12);
}

TEST_CASE("mutual information vanishes on constant channels") {
  const std::vector<double> row{0.2, 0.5, 0.3};
  const Channel constant({row, row, row, row});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CounterRng rng{seed};
    std::vector<double> p(4);
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      p[i] = -std::log(1.0 - rng.uniform(9, i, 0));
      sum += p[i];
    }
    for (double& x : p) x /= sum;
    CHECK(mutual_information(Distribution(p), constant) <= 1e-10);
  }
}

TEST_CASE("variational distance") {
  const Distribution p({0.6, 0.4});
  CHECK(variational_distance(p, p) == 0.0);
  CHECK(variational_distance(Distribution::point_mass(0, 2), Distribution::point_mass(1, 2)) ==
        2.0);
  CHECK(variational_distance(p, Distribution::uniform(2)) == Catch::Approx(0.2));
  // Symmetry and triangle inequality.
  const Distribution q({0.1, 0.9}), r({0.35, 0.65});
  CHECK(variational_distance(p, q) == Catch::Approx(variational_distance(q, p)));
  CHECK(variational_distance(p, q) <=
        variational_distance(p, r) + variational_distance(r, q) + 1e-15);
}

TEST_CASE("joint mutual information") {
  const JointDistribution product({{0.12, 0.28}, {0.18, 0.42}});  // (0.4,0.6) x (0.3,0.7)
  CHECK(mutual_information_joint(product) <= 1e-12);

  const JointDistribution correlated({{0.5, 0.0}, {0.0, 0.5}});
  CHECK(mutual_information_joint(correlated) == Catch::Approx(1.0));

  const JointDistribution skew({{0.4, 0.1}, {0.1, 0.4}});
  CHECK(mutual_information_joint(skew) == Catch::Approx(1.0 - binary_entropy(0.2)));
}

TEST_CASE("two-path consistency") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Channel w = random_channel(3, 4, seed + 30);
    const Distribution p = Distribution::normalized({0.2 + seed * 0.05, 1.0, 0.7});
    CHECK(mutual_information_joint(JointDistribution::induced(p, w)) ==
          Catch::Approx(mutual_information(p, w)).margin(1e-10));
  }
}

TEST_CASE("data processing") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Channel w = random_channel(3, 4, seed);
    const Channel d = random_channel(4, 3, seed + 1000);
    const Distribution p = Distribution::normalized({1.0, 0.5 + seed * 0.1, 0.8});
    CHECK(mutual_information(p, compose(w, d)) <= mutual_information(p, w) + 1e-10);
  }
}

TEST_CASE("pinsker bound") {
  CHECK(pinsker_tv_bound(0.0) == 0.0);
  CHECK(pinsker_tv_bound(1.0) == Catch::Approx(1.17741).margin(1e-5));
  CHECK_THROWS_AS(pinsker_tv_bound(-1e-9), std::invalid_argument);
}

TEST_CASE("pinsker property over random joints") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t r = 2 + seed % 7, c = 2 + (seed / 7) % 7;
    const JointDistribution joint = random_joint(r, c, seed);
    const auto pj = joint.row_marginal();
    const auto pz = joint.col_marginal();
    double tv = 0.0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) tv += std::abs(joint(i, j) - pj[i] * pz[j]);
    CHECK(tv <= pinsker_tv_bound(mutual_information_joint(joint)) + 1e-12);
  }
}
