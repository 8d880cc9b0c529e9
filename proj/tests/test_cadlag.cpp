#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "m2ma/cadlag.hpp"
#include "random_paths.hpp"

using namespace m2ma;
using m2ma::testing::random_step;

namespace {

StepFunction indicator(double from, double height = 1.0) {
  return StepFunction({from}, {0.0, height});
}

}  // namespace

TEST_CASE("StepFunction construction and evaluation") {
  const StepFunction x({0.25, 0.5, 0.75}, {1.0, 2.0, 2.0, -1.0});
  CHECK(x.jump_count() == 2);  // the zero-height jump at 0.5 is merged
  CHECK(x(0.0) == 1.0);
  CHECK(x(0.25) == 2.0);
  CHECK(x.left_limit(0.25) == 1.0);
  CHECK(x(0.6) == 2.0);
  CHECK(x(1.0) == -1.0);
  CHECK(x.left_limit(0.75) == 2.0);
  CHECK(x.left_limit(0.0) == 1.0);

  CHECK_THROWS_AS(StepFunction({0.5, 0.5}, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({0.6, 0.5}, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({0.0}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({1.5}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({0.5}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction({0.5}, {0, INFINITY}), std::invalid_argument);
  CHECK_THROWS_AS(x(1.5), std::domain_error);
}

TEST_CASE("partial_sum_path") {
  const std::vector<double> y{1.0, 2.0};
  const auto x = partial_sum_path(y, 1.0, 0.0);
  CHECK(x(0.0) == 0.0);
  CHECK(x(0.49) == 0.0);
  CHECK(x(0.5) == 1.0);
  CHECK(x(0.99) == 1.0);
  CHECK(x(1.0) == 3.0);

  const std::vector<double> five{5.0};
  const auto single = partial_sum_path(five, 5.0, 0.0);
  CHECK(single(0.999) == 0.0);
  CHECK(single(1.0) == 1.0);

  const std::vector<double> ones{1, 1, 1, 1};
  CHECK(partial_sum_path(ones, 2.0, 1.0) == StepFunction(0.0));

  CHECK_THROWS_AS(partial_sum_path(std::vector<double>{}, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(partial_sum_path(ones, 0.0, 0.0), std::invalid_argument);

  // Direct definition at random times.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> v(37);
  for (double& e : v) e = g(rng);
  const auto path = partial_sum_path(v, 3.0, 0.25);
  for (int i = 0; i < 200; ++i) {
    const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto k = static_cast<std::size_t>(std::floor(37.0 * t));
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += v[j];
    CHECK(path(t) == doctest::Approx((s - static_cast<double>(k) * 0.25) / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("completed graph") {
  const auto flat = completed_graph(StepFunction(2.5));
  REQUIRE(flat.size() == 1);
  CHECK(flat[0] == Segment{{0.0, 2.5}, {1.0, 2.5}});

  const auto step = completed_graph(indicator(0.5));
  REQUIRE(step.size() == 3);
  CHECK(step[0] == Segment{{0.0, 0.0}, {0.5, 0.0}});
  CHECK(step[1] == Segment{{0.5, 0.0}, {0.5, 1.0}});
  CHECK(step[1].vertical());
  CHECK(step[2] == Segment{{0.5, 1.0}, {1.0, 1.0}});

  const StepFunction two({1.0 / 3.0, 2.0 / 3.0}, {0.0, 1.0, -1.0});
  const auto g = completed_graph(two);
  REQUIRE(g.size() == 5);
  const std::vector<Segment> expected{{{0, 0}, {1.0 / 3.0, 0}},
                                      {{1.0 / 3.0, 0}, {1.0 / 3.0, 1}},
                                      {{1.0 / 3.0, 1}, {2.0 / 3.0, 1}},
                                      {{2.0 / 3.0, 1}, {2.0 / 3.0, -1}},
                                      {{2.0 / 3.0, -1}, {1, -1}}};
  for (std::size_t i = 0; i < 5; ++i) CHECK(g[i] == expected[i]);

  // A jump at t = 1 ends the chain with its vertical segment.
  const auto end = completed_graph(indicator(1.0, 2.0));
  REQUIRE(end.size() == 2);
  CHECK(end[1] == Segment{{1.0, 0.0}, {1.0, 2.0}});

  CHECK_THROWS_AS(CompletedGraph({{{0, 0}, {0.5, 0}}, {{0.6, 0}, {1, 0}}}), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_step(rng, 50);
    const auto cg = completed_graph(x);
    CHECK(cg[0].from == Point{0.0, x.initial()});
    CHECK(cg[cg.size() - 1].to == Point{1.0, x.terminal()});
    for (std::size_t s = 1; s < cg.size(); ++s) CHECK(cg[s].from == cg[s - 1].to);
  }
}

TEST_CASE("m2 and uniform distance examples") {
  const auto a = indicator(0.5);
  const auto b = indicator(0.6);
  CHECK(m2_distance(a, a) == 0.0);
  CHECK(sampled_hausdorff(a, a, 0.01) == 0.0);
  CHECK(sampled_hausdorff(a, a, 7.0) == 0.0);

  const double d = m2_distance(a, b);
  CHECK(d == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(std::abs(sampled_hausdorff(a, b, 1e-4) - d) <= 1e-4);
  CHECK(uniform_distance(a, b) == 1.0);

  const StepFunction zero(0.0);
  const auto half = indicator(0.3, 0.5);
  CHECK(m2_distance(zero, half) == 0.5);
  CHECK(std::abs(sampled_hausdorff(zero, half, 1e-4) - 0.5) <= 1e-4);
  CHECK(uniform_distance(zero, half) == 0.5);
  CHECK(uniform_distance(zero, indicator(0.3, -2.0)) == 2.0);

  // Coarse nets still land within h.
  CHECK(std::abs(sampled_hausdorff(a, b, 3.0) - d) <= 3.0);

  // A jump split into two halves is M2-close but uniformly far.
  const StepFunction split({0.5, 0.5 + 1e-3}, {0.0, 0.5, 1.0});
  CHECK(m2_distance(a, split) == (0.5 + 1e-3) - 0.5);
  CHECK(uniform_distance(a, split) == 0.5);
}

TEST_CASE("time shift of a single jump moves the distance by exactly the shift") {
  for (const double tau : {0.2, 0.5, 0.8}) {
    for (const double height : {0.5, 1.0, -2.0}) {
      const auto x = indicator(tau, height);
      for (const double delta : {1e-3, 0.01, 0.05, -0.03}) {
        const auto shifted = indicator(tau + delta, height);
        CHECK(m2_distance(x, shifted) == std::abs((tau + delta) - tau));
      }
    }
  }
  // Several jumps; moving one of them.
  const StepFunction base({0.2, 0.5, 0.7}, {0.0, 1.0, -0.5, 2.0});
  const StepFunction moved({0.2, 0.52, 0.7}, {0.0, 1.0, -0.5, 2.0});
  CHECK(m2_distance(base, moved) == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("metric properties on random pairs") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_step(rng, 50);
    const auto y = random_step(rng, 50);
    const auto z = random_step(rng, 50);
    const double xy = m2_distance(x, y);
    CHECK(m2_distance(x, x) == 0.0);
    CHECK(xy == m2_distance(y, x));
    CHECK(xy >= 0.0);
    CHECK(m2_distance(x, z) <= xy + m2_distance(y, z) + 1e-9);
    CHECK(xy <= uniform_distance(x, y) + 1e-12);
    CHECK(std::abs(sup_functional(x) - sup_functional(y)) <= xy + 1e-12);
    CHECK(xy == std::max(directed_m2_distance(x, y), directed_m2_distance(y, x)));
  }
}

TEST_CASE("agreement with the sampled oracle") {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_step(rng, 50);
    const auto y = random_step(rng, 50);
    const double exact = m2_distance(x, y);
    for (const double h : {1e-2, 1e-3}) {
      const double sampled = sampled_hausdorff(x, y, h);
      CHECK_MESSAGE(std::abs(exact - sampled) <= h, "pair " << i << " h " << h << " exact " << exact
                                                             << " sampled " << sampled);
    }
  }
}

TEST_CASE("sup functional") {
  CHECK(sup_functional(StepFunction(-3.0)) == -3.0);
  const std::vector<double> y{1.0, -2.0, 3.0};
  CHECK(sup_functional(partial_sum_path(y, 1.0, 0.0)) == 2.0);
}

TEST_CASE("csv round trip") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_step(rng, 30);
    CHECK(from_csv(to_csv(x)) == x);
  }
  const auto text = to_csv(indicator(0.5, 0.1));
  CHECK(text == "t,value\n0,0\n0.5,0.1\n");

  CHECK_THROWS_AS(from_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(from_csv("time,value\n0,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_csv("t,value\n0.1,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_csv("t,value\n0,abc\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_csv("t,value\n0,1\n0.5\n"), std::invalid_argument);
  CHECK(from_csv("t,value\r\n0,1\r\n0.5,2\r\n") == StepFunction({0.5}, {1.0, 2.0}));
}
