#pragma once

// Stress-energy tensors, radiated energy-momentum fluxes through large
// spheres, and the Gauss-law charge.

#include <functional>

#include "fieldcheck/minkowski.hpp"
#include "fieldcheck/quadrature.hpp"
#include "fieldcheck/solver.hpp"
#include "fieldcheck/sources.hpp"

namespace fieldcheck {

struct StressTensor {
  Tensor2 components;       // covariant T_{mu nu}
  double lagrangian = 0.0;  // scalar theory only; 0 for the EM tensor
};

// L = -eta^{rho sigma} phi_{,rho} phi_{,sigma} / 8 pi,
// T_{mu nu} = L eta_{mu nu} + phi_{,mu} phi_{,nu} / 4 pi.
StressTensor scalar_stress(const FourVectorCo& grad);

// 4 pi T_{mu nu} = 1/4 eta_{mu nu} f_{rho sigma} f^{rho sigma}
//                 - f_{mu rho} f_nu{}^rho.
// Traceless and symmetric. The input must be antisymmetric (within 1e-12
// of its largest component); anything else is a usage error.
StressTensor em_stress(const Tensor2& f);

struct FluxVector {
  enum class Method { kExactIntegrand, kAsymptoticAmplitude };

  FourVectorCo W;  // W_0 = radiated energy per unit time, W_s = momentum
  double radius = 0.0;
  Method method = Method::kExactIntegrand;
};

// W_mu = surface integral of T^s{}_mu n^s. The mixed first index is raised
// with eta, so the integrand over covariant components is -T_{s mu} n^s.
FluxVector flux(const std::function<StressTensor(const Vec3&)>& field_at,
                const SphereRule& sphere);

// Fluxes of a constructed solution, phase-locked: every node of a sphere
// of radius r is evaluated at t = u0 + r (retarded) or u0 - r (advanced).
FluxVector scalar_flux(const ScalarSource& src, Orientation orient, double u0,
                       const SphereRule& sphere, const VolumeRule& rule);
FluxVector em_flux(const CurrentSource& src, Orientation orient, double u0,
                   const SphereRule& sphere, const VolumeRule& rule);

// Asymptotic-amplitude companions: W_mu = (1/4pi) surface integral of
// psi^2 k_mu, resp. -(1/4pi) surface integral of (B_rho B^rho) k_mu.
FluxVector scalar_flux_asymptotic(const ScalarSource& src, Orientation orient,
                                  double u0, const SphereRule& sphere,
                                  const VolumeRule& rule);
FluxVector em_flux_asymptotic(const CurrentSource& src, Orientation orient,
                              double u0, const SphereRule& sphere,
                              const VolumeRule& rule);

// e = (1/4pi) surface integral of f^{k0} n^k = (1/4pi) of E . n over the
// sphere of the given radius (the rule is rebuilt at that radius) at fixed
// time. The sphere must lie outside the source support.
double gauss_charge(const CurrentSource& src, double radius, double time,
                    const SphereRule& sphere, const VolumeRule& rule);

}  // namespace fieldcheck
