#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ncguard/overhead.hpp"

using namespace ncguard::overhead;

namespace {

CostModelParams at(double p_n, std::uint64_t G = 100) {
  CostModelParams c;
  c.p_n = p_n;
  c.G = G;
  return c;
}

}  // namespace

TEST_CASE("packet scheme") {
  CHECK(packet_scheme_cost(at(0.0)) == 0.06);
  CHECK(packet_scheme_cost(at(0.06)) == 0.0);
  CHECK(packet_scheme_cost(at(0.5)) == 0.0);
  CHECK(packet_scheme_cost(at(0.03)) == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(packet_scheme_cost(at(0.03)) == doctest::Approx(e2e_cost(0.03)).epsilon(1e-12));
  CHECK(packet_scheme_cost_raw(at(0.5)) == doctest::Approx(-0.44));
}

TEST_CASE("end-to-end scheme") {
  CHECK(e2e_cost(0.0) == 0.0);
  CHECK(e2e_cost(1.0) == 1.0);
  CHECK(e2e_cost(0.25) == 0.25);
  CHECK_THROWS_AS(e2e_cost(1.5), std::invalid_argument);
}

TEST_CASE("generation drop probability") {
  CHECK(generation_drop_prob(0.0, 50) == 0.0);
  CHECK(generation_drop_prob(0.37, 1) == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(generation_drop_prob(0.01, 100) == doctest::Approx(1.0 - std::pow(0.99, 100)).epsilon(1e-14));
  CHECK(generation_drop_prob(0.01, 100) == doctest::Approx(0.6340).epsilon(1e-4));
  for (int k = 1; k < 90; ++k) {
    const double p = k / 100.0;
    REQUIRE(generation_drop_prob(p, 10) < generation_drop_prob(p + 0.01, 10));
    REQUIRE(generation_drop_prob(p, 10) < generation_drop_prob(p, 11));
  }
}

TEST_CASE("generation scheme") {
  CHECK(generation_scheme_cost(at(0.0)) == 0.02);
  CHECK(generation_cost_limit(0.0) == 1.0);
  CHECK(generation_cost_limit(0.5) == 0.0);
  CHECK(generation_cost_limit(0.25) == 0.5);
  // The hash term og_rate does not vanish as G grows, so the generation cost tends to
  // max{0, og_rate + 1 - 2 p_n}; the published limit drops it.
  for (int k = 5; k <= 100; ++k) {
    const double p = k / 100.0;
    const double cost = generation_scheme_cost(at(p, 10000));
    REQUIRE(std::abs(cost - std::max(0.0, 0.02 + 1.0 - 2.0 * p)) <= 1e-3);
  }
  CHECK(generation_scheme_cost(at(0.1, 10000)) - generation_cost_limit(0.1) == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(generation_scheme_cost(at(0.3, 10000)) - generation_cost_limit(0.3) == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(generation_scheme_cost(at(0.6, 10000)) == generation_cost_limit(0.6));
}

TEST_CASE("generation cost approaches the limit as G grows") {
  for (double p : {0.05, 0.1, 0.2, 0.3}) {
    double prev = 1e9;
    for (std::uint64_t G : {1, 10, 100, 1000, 10000}) {
      const double gap = std::abs(generation_scheme_cost(at(p, G)) - std::max(0.0, 0.02 + 1.0 - 2.0 * p));
      REQUIRE(gap <= prev + 1e-15);
      prev = gap;
    }
  }
}

TEST_CASE("generation cost exceeds 1 near p_n = 0 for large G") {
  // og_rate + p_g (1 - p_n) - p_n tends to og_rate + 1 as G grows with p_n -> 0+
  const double c = generation_scheme_cost(at(0.001, 100000));
  CHECK(c > 1.0);
  CHECK(c <= 1.0 + 0.02);
}

TEST_CASE("all costs lie in range over the grid") {
  for (std::uint64_t G : {1, 10, 100, 1000}) {
    for (double p : p_n_grid(0.01)) {
      const auto c = at(p, G);
      REQUIRE(packet_scheme_cost(c) >= 0.0);
      REQUIRE(packet_scheme_cost(c) <= 1.0);
      REQUIRE(e2e_cost(p) >= 0.0);
      REQUIRE(generation_scheme_cost(c) >= 0.0);
      REQUIRE(generation_scheme_cost(c) <= 1.0 + c.og_rate);
    }
  }
  CHECK(generation_scheme_cost(at(1.0)) == 0.0);
  CHECK(packet_scheme_cost(at(1.0)) == 0.0);
}

TEST_CASE("monotone shapes") {
  const auto grid = p_n_grid(0.005);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    REQUIRE(packet_scheme_cost(at(grid[k])) <= packet_scheme_cost(at(grid[k - 1])));
    REQUIRE(e2e_cost(grid[k]) > e2e_cost(grid[k - 1]));
  }
}

TEST_CASE("public key overhead") {
  const auto ten_mb = pubkey_overhead(10'000'000, 100, 160, 1024);
  CHECK(ten_mb.l == 5000);
  CHECK(ten_mb.fraction == doctest::Approx(0.06528).epsilon(1e-12));
  const auto tiny = pubkey_overhead(20, 1, 160, 1024);
  CHECK(tiny.l == 1);
  CHECK(tiny.fraction == doctest::Approx(12.8).epsilon(1e-12));
  CHECK_THROWS_AS(pubkey_overhead(20, 1, 160, 0), std::invalid_argument);
}

TEST_CASE("grid") {
  const auto g = p_n_grid(0.3);
  REQUIRE(g.size() == 5);
  CHECK(g.back() == 1.0);
  CHECK(p_n_grid(0.005).size() == 201);
  CHECK_THROWS_AS(p_n_grid(0.0), std::invalid_argument);
}

TEST_CASE("crossovers") {
  const auto pe = crossover(Scheme::packet, Scheme::e2e, at(0.0), 0.001);
  REQUIRE(pe.size() == 1);
  CHECK(std::abs(pe.front().lo - 0.03) <= 0.001);
  CHECK(pe.front().hi == 1.0);

  const auto same = crossover(Scheme::e2e, Scheme::e2e, at(0.0), 0.01);
  REQUIRE(same.size() == 1);
  CHECK(same.front().lo == 0.0);
  CHECK(same.front().hi == 1.0);

  for (const auto& iv : crossover(Scheme::packet, Scheme::generation, at(0.0), 0.001)) CHECK(iv.hi == 1.0);
  const auto pg = crossover(Scheme::packet, Scheme::generation, at(0.0), 0.001);
  REQUIRE(pg.size() == 1);
  CHECK(pg.front().lo <= 0.06);

  CHECK_THROWS_AS(crossover(Scheme::e2e, Scheme::e2e, at(0.0), 0.2), std::invalid_argument);
}

TEST_CASE("generation argmax moves toward zero as G grows") {
  CostModelParams c;
  double prev = 1.0;
  for (std::uint64_t G : {10, 20, 50, 100, 200, 1000}) {
    c.G = G;
    const double arg = generation_cost_argmax(c, 0.005);
    REQUIRE(arg <= prev);
    prev = arg;
  }
  c.G = 200;
  CHECK(generation_cost_argmax(c, 0.005) == doctest::Approx(0.025));
}

TEST_CASE("scheme names and curves") {
  CHECK(scheme_from_string("generation") == Scheme::generation);
  CHECK(to_string(Scheme::packet) == "packet");
  CHECK_THROWS_AS(scheme_from_string("hash"), std::invalid_argument);
  const auto curve = cost_curve(Scheme::generation, at(0.0, 10), p_n_grid(0.1));
  CHECK(curve.label == "generation_G10");
  CHECK(curve.points.size() == 11);
}
