#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "m2ma/cadlag.hpp"
#include "m2ma/parallel.hpp"
#include "m2ma/stablelim.hpp"

namespace m2ma {

namespace {

using cplx = std::complex<double>;
using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kDepth = 20;
constexpr double kTolerance = 1e-13;

template <class F>
double integrate(F f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, kDepth, kTolerance);
}

// integral_0^1 (e^{itx} - 1 - itx) x^(-alpha-1) dx
cplx near_part(double alpha, double t) {
  const double x0 = std::min(1.0, 1.0 / std::abs(t));
  // Power series on (0, x0]: sum_{k>=2} (i t x0)^k / k! * x0^-alpha / (k - alpha).
  const cplx w(0.0, t * x0);
  cplx power = w;  // w^k / k!
  cplx series = 0.0;
  for (int k = 2; k < 200; ++k) {
    power *= w / static_cast<double>(k);
    const cplx term = power / (static_cast<double>(k) - alpha);
    series += term;
    if (std::abs(term) < 1e-20 * std::max(1.0, std::abs(series))) break;
  }
  series *= std::pow(x0, -alpha);
  if (x0 >= 1.0) return series;
  const double re = integrate(
      [&](double x) { return (std::cos(t * x) - 1.0) * std::pow(x, -alpha - 1.0); }, x0, 1.0);
  const double im = integrate(
      [&](double x) { return (std::sin(t * x) - t * x) * std::pow(x, -alpha - 1.0); }, x0, 1.0);
  return series + cplx(re, im);
}

// integral_1^inf e^{itx} x^-beta dx, t != 0.
cplx oscillatory_tail(double beta, double t) {
  const double end = std::max(1.0, 64.0 / std::abs(t));
  double re = 0.0;
  double im = 0.0;
  for (double a = 1.0; a < end;) {
    const double b = std::min(end, 2.0 * a);
    re += integrate([&](double x) { return std::cos(t * x) * std::pow(x, -beta); }, a, b);
    im += integrate([&](double x) { return std::sin(t * x) * std::pow(x, -beta); }, a, b);
    a = b;
  }
  // integral_X^inf by repeated integration by parts:
  // -e^{itX} sum_k (beta)_k X^(-beta-k) / (it)^(k+1), cut at its smallest term.
  const cplx it(0.0, t);
  cplx term = std::pow(end, -beta) / it;
  cplx sum = 0.0;
  double previous = std::abs(term) * 2.0;
  for (int k = 0; k < 400; ++k) {
    const double size = std::abs(term);
    if (size >= previous) break;
    sum += term;
    if (size < 1e-22) break;
    previous = size;
    term *= (beta + k) / (end * it);
  }
  return cplx(re, im) - std::exp(it * end) * sum;
}

// alpha * integral_0^inf (e^{itx} - 1 - itx 1{x <= 1}) x^(-alpha-1) dx
cplx one_sided(double alpha, double t) {
  const cplx far = oscillatory_tail(alpha + 1.0, t) - 1.0 / alpha;
  return alpha * (near_part(alpha, t) + far);
}

}  // namespace

LevyTriple levy_triple(const TailModel& model) {
  const double a = model.alpha();
  const double b = a == 1.0 ? 0.0 : (model.p() - model.r()) * a / (1.0 - a);
  return {0.0, a, model.p(), model.r(), b};
}

std::complex<double> lk_exponent(const LevyTriple& triple, double t) {
  if (t == 0.0) return 0.0;
  if (!std::isfinite(t)) throw std::domain_error("lk_exponent: t must be finite");
  const cplx positive = one_sided(triple.alpha, t);
  // The negative half-line contributes the conjugate of the positive one.
  const cplx jumps = triple.p * positive + triple.r * std::conj(positive);
  return cplx(0.0, triple.b * t) + jumps;
}

std::complex<double> limit_cf(const LevyTriple& triple, double phi_total, double t) {
  return std::exp(lk_exponent(triple, phi_total * t));
}

const char* to_string(Functional f) noexcept {
  return f == Functional::terminal ? "terminal" : "supremum";
}

Functional parse_functional(const std::string& name) {
  if (name == "terminal") return Functional::terminal;
  if (name == "supremum") return Functional::supremum;
  throw std::invalid_argument("functional must be 'terminal' or 'supremum', got '" + name + "'");
}

double evaluate_functional(Functional f, const std::vector<double>& y, double scale, double drift) {
  double sum = 0.0;
  double best = partial_sum_value(0.0, 0, drift, scale);
  double value = best;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sum += y[i];
    value = partial_sum_value(sum, i + 1, drift, scale);
    best = std::max(best, value);
  }
  return f == Functional::terminal ? value : best;
}

std::vector<double> reference_limit_sample(const TailModel& model, double phi_total,
                                           std::int64_t n_big, std::size_t reps,
                                           Functional functional, Seed seed, unsigned jobs) {
  if (n_big < 1) throw std::invalid_argument("reference_limit_sample: N must be at least 1");
  if (reps < 1) throw std::invalid_argument("reference_limit_sample: reps must be at least 1");
  const double scale = norming_constant(model, n_big).value();
  const double drift = centering_constant(model, phi_total);
  std::vector<double> sample(reps);
  parallel_for(reps, jobs, [&](std::size_t r) {
    const Seed s = derive_seed(seed, {key(Stream::reference), static_cast<std::uint64_t>(r)});
    auto y = sample_noise(model, static_cast<std::size_t>(n_big), 1, s);
    for (double& v : y) v *= phi_total;
    sample[r] = evaluate_functional(functional, y, scale, drift);
  });
  return sample;
}

}  // namespace m2ma
