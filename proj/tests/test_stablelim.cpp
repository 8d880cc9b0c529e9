#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "m2ma/cadlag.hpp"
#include "m2ma/stablelim.hpp"
#include "m2ma/stats.hpp"

using namespace m2ma;
using cplx = std::complex<double>;

namespace {

// psi from the gamma-function closed form of the one-sided integral.
cplx closed_form(double alpha, double p, double t) {
  const double r = 1.0 - p;
  if (alpha == 1.0) return -std::numbers::pi / 2.0 * std::abs(t);
  const double sign = t > 0 ? 1.0 : -1.0;
  const double mag = std::pow(std::abs(t), alpha);
  const double re = -std::tgamma(1.0 - alpha) * mag * std::cos(std::numbers::pi * alpha / 2.0);
  const double im = alpha * (-sign * std::tgamma(-alpha) * mag * std::sin(std::numbers::pi * alpha / 2.0) -
                             t / (1.0 - alpha));
  const cplx one_sided(re, im);
  const double b = (p - r) * alpha / (1.0 - alpha);
  return cplx(0.0, b * t) + p * one_sided + r * std::conj(one_sided);
}

// alpha * integral_0^inf (cos x - 1) x^-1.5 dx at alpha = 1/2, by trapezoid
// rules: x = u^2 on [0, 1], a fine grid on [1, X] with end corrections, and
// the first integration-by-parts terms beyond X = 2 pi K.
double trapezoid_half_stable() {
  auto near = [](double u) { return u == 0.0 ? 0.0 : 2.0 * (std::cos(u * u) - 1.0) / (u * u); };
  const int m = 20000;
  double s = 0.5 * (near(0.0) + near(1.0));
  for (int i = 1; i < m; ++i) s += near(static_cast<double>(i) / m);
  s /= m;

  auto f = [](double x) { return (std::cos(x) - 1.0) * std::pow(x, -1.5); };
  auto df = [](double x) { return -std::sin(x) * std::pow(x, -1.5) - 1.5 * (std::cos(x) - 1.0) * std::pow(x, -2.5); };
  const double end = 2.0 * std::numbers::pi * 1000.0;
  const long steps = 4000000;
  const double h = (end - 1.0) / static_cast<double>(steps);
  long double acc = 0.5L * (f(1.0) + f(end));
  for (long i = 1; i < steps; ++i) acc += f(1.0 + h * static_cast<double>(i));
  double mid = static_cast<double>(acc) * h - h * h / 12.0 * (df(end) - df(1.0));
  // integral_X^inf cos x x^-1.5 - x^-1.5 dx with sin X = 0, cos X = 1.
  mid += 1.5 * std::pow(end, -2.5) - 2.0 * std::pow(end, -0.5);
  return 0.5 * (s + mid);
}

}  // namespace

TEST_CASE("levy triple") {
  const auto sym1 = levy_triple(make_tail_model(1.0, 0.5));
  CHECK(sym1.b == 0.0);
  CHECK(sym1.gaussian == 0.0);
  CHECK(levy_triple(make_tail_model(0.5, 1.0)).b == 1.0);
  CHECK(levy_triple(make_tail_model(1.5, 0.5)).b == 0.0);
  CHECK(levy_triple(make_tail_model(1.5, 1.0)).b == doctest::Approx(-3.0).epsilon(1e-15));
  const auto t = levy_triple(make_tail_model(0.8, 0.3));
  CHECK(t.p == 0.3);
  CHECK(t.r == 0.7);
  CHECK(t.alpha == 0.8);
}

TEST_CASE("lk exponent against the closed form") {
  CHECK(lk_exponent(levy_triple(make_tail_model(0.8, 0.5)), 0.0) == cplx(0.0, 0.0));
  for (const double alpha : {0.3, 0.5, 0.8, 1.0, 1.2, 1.5, 1.8}) {
    for (const double p : {0.5, 0.2, 1.0}) {
      if (alpha == 1.0 && p != 0.5) continue;
      const auto triple = levy_triple(make_tail_model(alpha, p));
      for (const double t : {-40.0, -5.0, -2.0, -1.0, -0.25, 0.01, 0.3, 1.0, 2.0, 6.0, 100.0}) {
        const cplx got = lk_exponent(triple, t);
        const cplx want = closed_form(alpha, p, t);
        CHECK_MESSAGE(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)),
                      "alpha " << alpha << " p " << p << " t " << t << " got " << got << " want " << want);
      }
    }
  }
}

TEST_CASE("lk exponent against an independent trapezoid evaluation") {
  const auto triple = levy_triple(make_tail_model(0.5, 0.5));
  const cplx psi = lk_exponent(triple, 1.0);
  CHECK(std::abs(psi.imag()) <= 1e-12);
  CHECK(std::abs(psi.real() - trapezoid_half_stable()) <= 1e-6);
}

TEST_CASE("lk exponent structure") {
  for (const double alpha : {0.5, 0.8, 1.0, 1.5}) {
    const auto sym = levy_triple(make_tail_model(alpha, 0.5));
    for (const double t : {0.25, 0.5, 1.0, 2.0, 7.0}) {
      const cplx v = lk_exponent(sym, t);
      CHECK(std::abs(v.imag()) <= 1e-12);
      CHECK(v.real() < 0.0);
      CHECK(std::abs(lk_exponent(sym, -t) - v) <= 1e-12);
      for (const double c : {2.0, 3.0}) {
        CHECK(std::abs(lk_exponent(sym, c * t) - std::pow(c, alpha) * v) <= 1e-6);
      }
    }
    const auto skew = levy_triple(make_tail_model(alpha, alpha == 1.0 ? 0.5 : 0.8));
    for (const double t : {0.25, 0.5, 1.0, 2.0}) {
      CHECK(std::abs(lk_exponent(skew, -t) - std::conj(lk_exponent(skew, t))) <= 1e-8);
      CHECK(lk_exponent(skew, t).real() <= 0.0);
    }
  }
}

TEST_CASE("limit cf") {
  const auto triple = levy_triple(make_tail_model(1.5, 0.9));
  CHECK(limit_cf(triple, 2.0, 0.0) == cplx(1.0, 0.0));
  for (const double t : {-3.0, -1.0, 0.1, 0.5, 2.0}) {
    CHECK(std::abs(limit_cf(triple, 2.0, t)) <= 1.0);
    CHECK(std::abs(limit_cf(triple, 2.0, t) - std::exp(lk_exponent(triple, 2.0 * t))) == 0.0);
  }
}

TEST_CASE("functional evaluation matches the path") {
  std::mt19937_64 rng(2);
  std::cauchy_distribution<double> c;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> y(static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 300)(rng)));
    for (double& v : y) v = c(rng);
    const double scale = 3.7;
    const double drift = i % 2 ? 0.4 : 0.0;
    const auto path = partial_sum_path(y, scale, drift);
    CHECK(evaluate_functional(Functional::supremum, y, scale, drift) == sup_functional(path));
    CHECK(evaluate_functional(Functional::terminal, y, scale, drift) == path.terminal());
  }
  CHECK(parse_functional("supremum") == Functional::supremum);
  CHECK(parse_functional("terminal") == Functional::terminal);
  CHECK_THROWS_AS(parse_functional("max"), std::invalid_argument);
}

TEST_CASE("reference limit sample") {
  const auto m = make_tail_model(0.8, 0.5);
  const std::size_t reps = 2000;
  const auto a = reference_limit_sample(m, 1.0, 10000, reps, Functional::terminal, 1);
  CHECK(a.size() == reps);
  CHECK(reference_limit_sample(m, 1.0, 10000, 5, Functional::terminal, 1, 3) ==
        std::vector<double>(a.begin(), a.begin() + 5));

  // Symmetric limit: median near 0.
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[reps / 2];
  const double iqr = sorted[3 * reps / 4] - sorted[reps / 4];
  CHECK(std::abs(median) <= 4.0 * iqr / std::sqrt(static_cast<double>(reps)));

  // Independent seed sets agree in law.
  const auto b = reference_limit_sample(m, 1.0, 10000, reps, Functional::terminal, 2);
  CHECK(ks_two_sample(a, b) < ks_two_sample_critical(reps, reps));

  // Empirical cf against exp(psi).
  const auto triple = levy_triple(m);
  for (const double t : {-2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0}) {
    const cplx diff = empirical_cf(a, t) - limit_cf(triple, 1.0, t);
    CHECK(std::abs(diff) <= 4.0 / std::sqrt(static_cast<double>(reps)) + 1e-3);
  }

  // Skewed, alpha > 1, negative Phi: centring keeps the cf match.
  const auto skew = make_tail_model(1.5, 0.8);
  const auto s = reference_limit_sample(skew, -1.5, 10000, reps, Functional::terminal, 3);
  for (const double t : {-1.0, -0.25, 0.5, 2.0}) {
    const cplx diff = empirical_cf(s, t) - limit_cf(levy_triple(skew), -1.5, t);
    CHECK(std::abs(diff) <= 4.0 / std::sqrt(static_cast<double>(reps)) + 1e-2);
  }

  const auto sup = reference_limit_sample(m, 1.0, 10000, 50, Functional::supremum, 1);
  for (std::size_t i = 0; i < sup.size(); ++i) CHECK(sup[i] >= std::max(0.0, a[i]));
}
