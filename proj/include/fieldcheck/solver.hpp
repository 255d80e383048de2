#pragma once

// Retarded and advanced field construction by direct quadrature of the
// kernel source(x', t -+ R)/R over the support ball. First derivatives come
// from analytic differentiation under the integral sign; differencing the
// potential at large r would cancel away most of the significand, so the
// finite-difference path survives only as a cross-check oracle in the tests.

#include "fieldcheck/minkowski.hpp"
#include "fieldcheck/quadrature.hpp"
#include "fieldcheck/sources.hpp"

namespace fieldcheck {

struct FieldSample {
  double value = 0.0;      // phi
  FourVectorCo gradient;   // phi_{,sigma}
};

struct PotentialSample {
  FourVectorContra potential;  // A^mu
  Tensor2 jacobian;            // A_{rho,sigma}: component rho, derivative sigma
  Tensor2 field;               // f_{mu nu} = alternate(jacobian)
  double lorenz = 0.0;         // eta^{rho sigma} A_{rho,sigma}
};

// phi(x,t) = integral over the support of rho(x', t -+ R)/R. Events inside
// (or within 1% of) the support ball are handled by re-centering the rule on
// the field point, which absorbs the 1/R factor into the radial measure;
// accuracy there is reduced and documented as such.
double scalar_potential(const ScalarSource& src, const Event& ev,
                        Orientation orient, const VolumeRule& rule);

// phi_{,0} = integral of rho_dot/R; phi_{,s} = integral of
// [-+ rho_dot (x-x')_s/R^2 - rho (x-x')_s/R^3] (upper sign retarded).
// Requires the event strictly outside the support (distance > 1.01 a).
FourVectorCo scalar_gradient(const ScalarSource& src, const Event& ev,
                             Orientation orient, const VolumeRule& rule);

// Value and gradient from a single pass over the quadrature nodes.
// Same precondition as scalar_gradient.
FieldSample scalar_sample(const ScalarSource& src, const Event& ev,
                          Orientation orient, const VolumeRule& rule);

// A^mu alone; allowed inside the support like scalar_potential.
FourVectorContra vector_potential_value(const CurrentSource& src,
                                        const Event& ev, Orientation orient,
                                        const VolumeRule& rule);

// A^mu, the covariant jacobian A_{rho,sigma}, the field tensor, and the
// Lorenz-condition residual, from a single pass. Requires the event outside
// the support.
PotentialSample vector_potential(const CurrentSource& src, const Event& ev,
                                 Orientation orient, const VolumeRule& rule);

// |laplacian(phi) - d^2 phi/dt^2| by second central differences of
// scalar_potential with step h. Exact answer outside the support: 0; at an
// interior point it approximates 4 pi |rho|.
double wave_residual(const ScalarSource& src, const Event& ev,
                     Orientation orient, const VolumeRule& rule,
                     double h = 1e-2);

// Same stencil applied to each component of A^mu; returns the largest
// component residual.
double wave_residual(const CurrentSource& src, const Event& ev,
                     Orientation orient, const VolumeRule& rule,
                     double h = 1e-2);

// E_i = f_{0i}.
Vec3 electric_field(const Tensor2& f);
// H_1 = -f_{23}, H_2 = -f_{31}, H_3 = -f_{12}.
Vec3 magnetic_field(const Tensor2& f);

// Outgoing (or incoming, for the advanced orientation) spherical wave
// chi = amplitude * sin(omega u)/r with u = t - r (retarded) or t + r
// (advanced). Solves the homogeneous wave equation, so adding its gradient
// to a potential is a pure gauge change: the field tensor is untouched.
class GaugeWave {
public:
  GaugeWave(double amplitude, double omega, Orientation orient)
      : amplitude_(amplitude), omega_(omega), orient_(orient) {}

  FourVectorCo gradient(const Event& ev) const;   // chi_{,mu}
  Tensor2 hessian(const Event& ev) const;         // chi_{,mu nu}, symmetric

  // A_mu -> A_mu + chi_{,mu} and everything that follows from it. The
  // symmetric Hessian cancels in the alternation, so the returned field
  // tensor matches the input's to rounding.
  PotentialSample apply(const PotentialSample& sample, const Event& ev) const;

private:
  double amplitude_, omega_;
  Orientation orient_;
};

}  // namespace fieldcheck
