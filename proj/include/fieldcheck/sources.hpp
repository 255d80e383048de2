#pragma once

// Compactly supported sources: scalar charge densities rho(x,t) and
// four-currents j^mu(x,t). Every source vanishes identically outside a ball
// of radius a and exposes its analytic time derivative (the retarded kernel
// gradient needs rho_dot at every quadrature node; finite-differencing there
// would dominate the error budget).

#include <memory>
#include <vector>

#include "fieldcheck/minkowski.hpp"
#include "fieldcheck/quadrature.hpp"

namespace fieldcheck {

struct Support {
  Vec3 center;
  double radius = 0.0;
};

// Normalization constant of the bump profile: 3465 / (512 pi a^3), fixed so
// the full-ball integral of the profile is exactly 1.
double bump_normalization(double a);

// C3 bump w_a(s) = C_a (1 - (s/a)^2)^4 for s < a, else 0.
double bump_profile(double s, double a);

class ScalarSource {
public:
  virtual ~ScalarSource() = default;

  virtual double evaluate(const Vec3& point, double time) const = 0;
  virtual double time_derivative(const Vec3& point, double time) const = 0;
  // Value and time derivative together; overridden where the pair shares
  // most of its work.
  virtual void evaluate_with_dt(const Vec3& point, double time, double& value,
                                double& dt) const;
  virtual Support support() const = 0;
};

class CurrentSource {
public:
  virtual ~CurrentSource() = default;

  // Contravariant components: c[0] = charge density j^0, c[1..3] = current.
  virtual FourVectorContra evaluate(const Vec3& point, double time) const = 0;
  virtual FourVectorContra time_derivative(const Vec3& point,
                                           double time) const = 0;
  virtual void evaluate_with_dt(const Vec3& point, double time,
                                FourVectorContra& value,
                                FourVectorContra& dt) const;
  virtual Support support() const = 0;
};

// rho = Q * w_a(|x - center|), time-independent.
std::shared_ptr<ScalarSource> static_monopole(double charge, double a,
                                              const Vec3& center = {});

// rho = q0 * sin(omega t) * w_a(|x - center|).
std::shared_ptr<ScalarSource> oscillating_monopole(double q0, double omega,
                                                   double a,
                                                   const Vec3& center = {});

// j^0 = e * w_a, spatial current zero.
std::shared_ptr<CurrentSource> static_charge(double charge, double a,
                                             const Vec3& center = {});

// p(t) = p0 sin(omega t); j = p_dot(t) w_a axis, j^0 = -p(t) (axis . grad)w_a.
// Continuity holds analytically by construction.
std::shared_ptr<CurrentSource> hertzian_dipole(double p0, double omega,
                                               double a, const Vec3& axis,
                                               const Vec3& center = {});

// Superpositions. Support is a ball covering every part.
std::shared_ptr<ScalarSource> scalar_sum(
    std::vector<std::shared_ptr<const ScalarSource>> parts);
std::shared_ptr<CurrentSource> current_sum(
    std::vector<std::shared_ptr<const CurrentSource>> parts);

// Integral of j^0 (resp. rho) over the rule's ball. The rule must cover the
// source support; throws PreconditionError otherwise.
double total_charge(const CurrentSource& src, double time,
                    const VolumeRule& rule);
double total_charge(const ScalarSource& src, double time,
                    const VolumeRule& rule);

// max over rule nodes of |d_t j^0 + div j|, normalized by max|j^mu| / a.
// Divergence by central differences with step a/200, so even an exactly
// conserved current reports a small nonzero residual.
double continuity_residual(const CurrentSource& src, double time,
                           const VolumeRule& rule);

}  // namespace fieldcheck
