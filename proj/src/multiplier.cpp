#include "rieszlab/multiplier.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "rieszlab/error.hpp"

namespace rieszlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string MultiplierProfile::describe() const {
  return std::visit(overloaded{
                        [](const profile::Riesz& r) { return "riesz(lambda=" + fmt(r.lambda) + ",R=" + fmt(r.R) + ")"; },
                        [](const profile::Band& b) { return "band[" + fmt(b.a) + "," + fmt(b.b) + ")"; },
                        [](const profile::Bump& b) { return "bump(delta=" + fmt(b.delta) + ",t=" + fmt(b.t) + ")"; },
                        [](const profile::LittlewoodPaley& l) { return "lp(k=" + std::to_string(l.k) + ")"; },
                        [](const profile::Custom& c) { return "custom(" + c.name + ")"; },
                    },
                    descriptor);
}

double riesz_factor(double E, double lambda, double R) {
  const double t = 1.0 - E / (R * R);
  if (t <= 0.0) return 0.0;
  return lambda == 0.0 ? 1.0 : std::pow(t, lambda);
}

MultiplierProfile riesz_profile(double lambda, double R) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("riesz profile: order lambda must be >= 0");
  }
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("riesz profile: radius must be positive");
  return {[=](double E) { return riesz_factor(E, lambda, R); }, profile::Riesz{lambda, R}};
}

MultiplierProfile band_profile(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("band profile: need a < b");
  return {[=](double E) { return (E >= a && E < b) ? 1.0 : 0.0; }, profile::Band{a, b}};
}

MultiplierProfile bump_multiplier(double delta, double t, const SmoothProfile& phi) {
  if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("bump multiplier: delta must be in (0, 1/2]");
  if (!(t > 0.0)) throw std::invalid_argument("bump multiplier: t must be positive");
  if (phi.support_lo < 0.125 || phi.support_hi > 0.5) {
    throw std::invalid_argument("bump multiplier: phi must be supported in [1/8, 1/2]");
  }
  auto f = phi.value;
  return {[=](double E) { return f((1.0 - E / (t * t)) / delta); }, profile::Bump{delta, t}};
}

MultiplierProfile lp_profile(int k, const SmoothProfile& phi) {
  if (!(phi.support_lo > 1.0 && phi.support_hi < 3.0)) {
    throw std::invalid_argument("littlewood-paley profile: phi must be supported in (1, 3)");
  }
  auto f = phi.value;
  const double scale = std::ldexp(1.0, -k);
  return {[=](double E) { return f(scale * std::sqrt(E)); }, profile::LittlewoodPaley{k}};
}

MultiplierProfile custom_profile(std::string name, std::function<double(double)> m) {
  return {std::move(m), profile::Custom{std::move(name)}};
}

MultiplierProfile product(const MultiplierProfile& m1, const MultiplierProfile& m2) {
  auto f = m1.evaluator;
  auto g = m2.evaluator;
  return {[=](double E) { return f(E) * g(E); }, profile::Custom{m1.describe() + "*" + m2.describe()}};
}

Expansion apply_multiplier(const Expansion& e, const MultiplierProfile& m) {
  Expansion out(e.dim(), e.truncation());
  std::vector<double> factors(static_cast<std::size_t>(e.truncation()) + 1,
                              std::numeric_limits<double>::quiet_NaN());
  for (int k = 0; k <= e.truncation(); ++k) {
    const double E = 2.0 * k + e.dim();
    const double v = m(E);
    factors[static_cast<std::size_t>(k)] = v;
  }
  for (const auto& [mu, c] : e.coefficients()) {
    const double v = factors[static_cast<std::size_t>(mu.order())];
    if (!std::isfinite(v)) {
      throw NumericalError("apply_multiplier: " + m.describe() + " is not finite at eigenvalue " +
                           std::to_string(2 * mu.order() + e.dim()));
    }
    out.coefficients().emplace_hint(out.coefficients().end(), mu, v * c);
  }
  return out;
}

Expansion bochner_riesz(const Expansion& e, double lambda, double R) {
  if (lambda < 0.0) throw std::invalid_argument("bochner_riesz: lambda < 0 is not defined at R^2 = 2k+n");
  return apply_multiplier(e, riesz_profile(lambda, R));
}

double critical_index(double p, int n) {
  if (!(p >= 1.0)) throw std::invalid_argument("critical_index: need p >= 1");
  if (n < 1) throw std::invalid_argument("critical_index: dimension must be >= 1");
  const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::max(n * std::fabs(0.5 - inv) - 0.5, 0.0);
}

double ae_threshold(double p, int n) { return 0.5 * critical_index(p, n); }

}  // namespace rieszlab
