#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "llt/error.hpp"
#include "llt/lattice_pmf.hpp"
#include "llt/report_io.hpp"
#include "oracles.hpp"

using llt::make_pmf;

TEST_CASE("make_pmf canonical forms") {
  SUBCASE("point mass") {
    const auto p = make_pmf(0, {1.0});
    CHECK(p.offset() == 0);
    CHECK(p.weights().size() == 1);
    CHECK(p.weights()[0] == 1.0);
    CHECK(p.trimmed_mass() == 0.0);
  }
  SUBCASE("boundary zeros are stripped") {
    const auto p = make_pmf(3, {0.0, 0.5, 0.5, 0.0});
    CHECK(p.offset() == 4);
    REQUIRE(p.size() == 2);
    CHECK(p.weights()[0] == 0.5);
    CHECK(p.weights()[1] == 0.5);
  }
  SUBCASE("round-off negatives clamp, interior zero kept") {
    const auto p = make_pmf(0, {0.5, -1e-13, 0.5});
    CHECK(p.offset() == 0);
    REQUIRE(p.size() == 3);
    CHECK(p.weights()[1] == 0.0);
    CHECK(p.weights()[0] == 0.5);
  }
  SUBCASE("slightly off mass is renormalized") {
    const auto p = make_pmf(0, {0.5 + 4e-10, 0.5});
    CHECK(p.total_weight() == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("make_pmf rejects corrupted input") {
  CHECK_THROWS_AS(make_pmf(0, {0.5, -1e-6, 0.5}), llt::InvalidArgument);
  CHECK_THROWS_AS(make_pmf(0, {0.0, 0.0}), llt::InvalidArgument);
  CHECK_THROWS_AS(make_pmf(0, {}), llt::InvalidArgument);
  CHECK_THROWS_AS(make_pmf(0, {0.5, 0.4}), llt::InvalidArgument);
  CHECK_THROWS_AS(make_pmf(0, {0.5, NAN}), llt::InvalidArgument);
  const auto loose = make_pmf(0, {0.5, 0.4}, {.unnormalized = true});
  CHECK(loose.total_weight() == doctest::Approx(0.9));
}

TEST_CASE("canonicalization is idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> w(1 + trial % 40);
    double total = 0.0;
    for (auto &x : w) {
      x = u(rng) < 0.2 ? 0.0 : u(rng);
      total += x;
    }
    if (total == 0.0) {
      continue;
    }
    for (auto &x : w) {
      x /= total;
    }
    const auto once = make_pmf(trial - 100, w);
    const auto twice =
        make_pmf(once.offset(), {once.weights().begin(), once.weights().end()},
                 {.unnormalized = false, .trimmed_mass = once.trimmed_mass()});
    CHECK(once == twice);
  }
}

TEST_CASE("mean_and_std") {
  SUBCASE("Bernoulli(1/2)") {
    const auto n = llt::mean_and_std(make_pmf(0, {0.5, 0.5}));
    CHECK(n.a == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(n.b == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("uniform on {0, 2}") {
    const auto n = llt::mean_and_std(make_pmf(0, {0.5, 0.0, 0.5}));
    CHECK(n.a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(n.b == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("point mass has zero variance") {
    CHECK_THROWS_WITH_AS(llt::mean_and_std(llt::delta(3)), doctest::Contains("zero variance"),
                         llt::InvalidArgument);
    CHECK_THROWS_AS(llt::mean_and_std(make_pmf(5, {1.0, 0.0, 0.0})), llt::InvalidArgument);
  }
}

TEST_CASE("mean_and_std agrees with a long double two-pass loop on a 10^6 support") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t len = 1'000'000;
  std::vector<double> w(len);
  long double total = 0.0L;
  for (std::size_t i = 0; i < len; ++i) {
    w[i] = u(rng) + 1e-6;
    total += w[i];
  }
  for (auto &x : w) {
    x = static_cast<double>(x / total);
  }
  const std::int64_t offset = -123456;
  const auto p = make_pmf(offset, w);
  long double mean = 0.0L;
  for (std::size_t i = 0; i < len; ++i) {
    mean += static_cast<long double>(offset + static_cast<std::int64_t>(i)) * p.weights()[i];
  }
  long double var = 0.0L;
  for (std::size_t i = 0; i < len; ++i) {
    const long double d = static_cast<long double>(offset + static_cast<std::int64_t>(i)) - mean;
    var += d * d * p.weights()[i];
  }
  const auto n = llt::mean_and_std(p);
  CHECK(std::fabs(n.a - static_cast<double>(mean)) <= 1e-12 * std::fabs(static_cast<double>(mean)));
  CHECK(std::fabs(n.b - std::sqrt(static_cast<double>(var))) <=
        1e-12 * std::sqrt(static_cast<double>(var)));
}

TEST_CASE("residue_distribution") {
  const auto uniform6 = make_pmf(0, std::vector<double>(6, 1.0 / 6.0));
  auto r = llt::residue_distribution(uniform6, 2);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-15));

  r = llt::residue_distribution(llt::delta(0), 2);
  CHECK(r[0] == 1.0);
  CHECK(r[1] == 0.0);

  // [1,4,6,4,1]/16: even classes 1+6+1, odd 4+4.
  const auto binom4 = make_pmf(0, {1 / 16.0, 4 / 16.0, 6 / 16.0, 4 / 16.0, 1 / 16.0});
  r = llt::residue_distribution(binom4, 2);
  CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-15));

  // Negative atoms use the mathematical remainder.
  r = llt::residue_distribution(llt::delta(-1), 3);
  CHECK(r[2] == 1.0);

  CHECK_THROWS_AS(llt::residue_distribution(uniform6, 0), llt::InvalidArgument);
}

TEST_CASE("residue entries sum to the retained mass") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = oracle::random_pmf(rng, 80);
    for (std::int64_t d = 1; d <= 7; ++d) {
      double s = 0.0;
      for (double x : llt::residue_distribution(p, d)) {
        s += x;
      }
      CHECK(std::fabs(s - p.total_weight()) <= 1e-12);
    }
    CHECK(llt::mod_deviation(p, 1) == 0.0);
  }
}

TEST_CASE("mod_deviation") {
  for (std::int64_t d = 1; d <= 9; ++d) {
    const auto u = make_pmf(0, std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
    CHECK(llt::mod_deviation(u, d) == doctest::Approx(0.0).epsilon(1e-15));
  }
  CHECK(llt::mod_deviation(llt::delta(0), 2) == 0.5);
  // Mass in a single class, with some trimmed mass recorded.
  const auto even = make_pmf(10, {0.25, 0.0, 0.5, 0.0, 0.25 - 1e-12}, {.trimmed_mass = 1e-12});
  CHECK(llt::mod_deviation(even, 2) == 0.5);
  CHECK(llt::mod_deviation(llt::delta(0), 3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(llt::mod_deviation(even, 0), llt::InvalidArgument);
}

TEST_CASE("json round trip is bit-faithful") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = oracle::random_pmf(rng, 50, 1000);
    const auto text = llt::pmf_to_json(p).dump();
    const auto back = llt::pmf_from_json(nlohmann::json::parse(text));
    CHECK(back == p);
  }
  const auto j = llt::pmf_to_json(make_pmf(-2, {0.25, 0.75}));
  CHECK(j.at("offset") == -2);
  CHECK(j.at("trimmed_mass") == 0.0);
  CHECK(j.at("weights").size() == 2);
  CHECK_THROWS_AS(llt::pmf_from_json(nlohmann::json{{"offset", 0}}), llt::InvalidArgument);
}
