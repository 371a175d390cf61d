#pragma once

#include <functional>
#include <string>
#include <variant>

#include "rieszlab/bump.hpp"
#include "rieszlab/expansion.hpp"

namespace rieszlab {

namespace profile {
/// (1 - E/R^2)_+^lambda.
struct Riesz {
  double lambda = 0.0;
  double R = 1.0;
};
/// Indicator of [a, b).
struct Band {
  double a = 0.0;
  double b = 0.0;
};
/// phi(delta^{-1}(1 - E/t^2)).
struct Bump {
  double delta = 0.5;
  double t = 1.0;
};
/// phi(2^{-k} sqrt(E)).
struct LittlewoodPaley {
  int k = 0;
};
struct Custom {
  std::string name;
};
}  // namespace profile

using ProfileDescriptor =
    std::variant<profile::Riesz, profile::Band, profile::Bump, profile::LittlewoodPaley, profile::Custom>;

/// Scalar function m(E) on the spectrum {2k + n} together with a
/// description of how it was built. apply_multiplier maps c(mu) to
/// m(2|mu| + n) c(mu).
struct MultiplierProfile {
  std::function<double(double)> evaluator;
  ProfileDescriptor descriptor = profile::Custom{"custom"};

  double operator()(double E) const { return evaluator(E); }
  std::string describe() const;
};

/// (1 - E/R^2)_+^lambda with the convention that lambda = 0 gives the
/// indicator of E < R^2.
double riesz_factor(double E, double lambda, double R);

MultiplierProfile riesz_profile(double lambda, double R);
MultiplierProfile band_profile(double a, double b);
/// Square-function piece; phi must be supported in [1/8, 1/2] with |phi| <= 1.
MultiplierProfile bump_multiplier(double delta, double t, const SmoothProfile& phi);
/// Littlewood-Paley piece at scale k; phi must be supported in (1, 3).
MultiplierProfile lp_profile(int k, const SmoothProfile& phi);
MultiplierProfile custom_profile(std::string name, std::function<double(double)> m);
/// Pointwise product m1 * m2.
MultiplierProfile product(const MultiplierProfile& m1, const MultiplierProfile& m2);

/// Coefficient at mu becomes m(2|mu| + n) c(mu). Throws NumericalError if m
/// is not finite at an occurring eigenvalue.
Expansion apply_multiplier(const Expansion& e, const MultiplierProfile& m);

/// S_R^lambda(H) applied to the expansion. lambda < 0 or R <= 0 is rejected.
Expansion bochner_riesz(const Expansion& e, double lambda, double R);

/// Critical index max{n |1/2 - 1/p| - 1/2, 0} for 1 <= p <= inf.
double critical_index(double p, int n);
/// Half the critical index.
double ae_threshold(double p, int n);

}  // namespace rieszlab
