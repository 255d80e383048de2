#include "fieldcheck/stress_energy.hpp"

#include <cmath>

#include "fieldcheck/asymptotics.hpp"
#include "fieldcheck/errors.hpp"

namespace fieldcheck {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

double eta(std::size_t mu, std::size_t nu) {
  if (mu != nu) return 0.0;
  return mu == 0 ? 1.0 : -1.0;
}

void require_sphere_outside(const SphereRule& sphere, const Support& sup,
                            const char* what) {
  if (sphere.radius() <= 1.01 * (sup.center.norm() + sup.radius)) {
    throw PreconditionError(std::string(what) +
                            ": sphere radius does not clear the source "
                            "support ball");
  }
}

double locked_time(Orientation orient, double u0, double r) {
  return orient == Orientation::kRetarded ? u0 + r : u0 - r;
}

}  // namespace

StressTensor scalar_stress(const FourVectorCo& grad) {
  StressTensor t;
  t.lagrangian = -minkowski_norm2(grad) / (2.0 * kFourPi);
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = 0; nu < 4; ++nu) {
      t.components(mu, nu) =
          t.lagrangian * eta(mu, nu) + grad[mu] * grad[nu] / kFourPi;
    }
  }
  return t;
}

StressTensor em_stress(const Tensor2& f) {
  if (!is_antisymmetric(f, 1e-12 * std::max(f.max_abs(), 1e-300))) {
    throw PreconditionError(
        "em_stress: field tensor is not antisymmetric within tolerance");
  }

  const Tensor2Contra f_up = raise_both(f);
  double invariant = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu)
      invariant += f(mu, nu) * f_up(mu, nu);

  StressTensor t;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = 0; nu < 4; ++nu) {
      // f_mu{}^rho f_nu{}_rho contracted: sum over rho with eta^{rho rho}.
      double mixed = 0.0;
      for (std::size_t rho = 0; rho < 4; ++rho) {
        const double sign = rho == 0 ? 1.0 : -1.0;
        mixed += sign * f(mu, rho) * f(nu, rho);
      }
      t.components(mu, nu) =
          (0.25 * eta(mu, nu) * invariant - mixed) / kFourPi;
    }
  }
  return t;
}

FluxVector flux(const std::function<StressTensor(const Vec3&)>& field_at,
                const SphereRule& sphere) {
  const auto total = integrate_node_components<4>(
      sphere.nodes(),
      [&](const SphereNode& node, std::array<double, 4>& v) {
        const StressTensor t = field_at(node.direction);
        const Vec3& n = node.direction;
        for (std::size_t mu = 0; mu < 4; ++mu) {
          v[mu] = -(t.components(1, mu) * n.x + t.components(2, mu) * n.y +
                    t.components(3, mu) * n.z);
        }
      },
      "flux");

  FluxVector w;
  w.W = {{total[0], total[1], total[2], total[3]}};
  w.radius = sphere.radius();
  w.method = FluxVector::Method::kExactIntegrand;
  return w;
}

FluxVector scalar_flux(const ScalarSource& src, Orientation orient, double u0,
                       const SphereRule& sphere, const VolumeRule& rule) {
  require_sphere_outside(sphere, src.support(), "scalar_flux");
  const double r = sphere.radius();
  const double t = locked_time(orient, u0, r);
  return flux(
      [&](const Vec3& n) {
        return scalar_stress(
            scalar_gradient(src, Event{t, n * r}, orient, rule));
      },
      sphere);
}

FluxVector em_flux(const CurrentSource& src, Orientation orient, double u0,
                   const SphereRule& sphere, const VolumeRule& rule) {
  require_sphere_outside(sphere, src.support(), "em_flux");
  const double r = sphere.radius();
  const double t = locked_time(orient, u0, r);
  return flux(
      [&](const Vec3& n) {
        return em_stress(
            vector_potential(src, Event{t, n * r}, orient, rule).field);
      },
      sphere);
}

FluxVector scalar_flux_asymptotic(const ScalarSource& src, Orientation orient,
                                  double u0, const SphereRule& sphere,
                                  const VolumeRule& rule) {
  require_sphere_outside(sphere, src.support(), "scalar_flux_asymptotic");
  const double r = sphere.radius();
  const double t = locked_time(orient, u0, r);

  const auto total = integrate_node_components<4>(
      sphere.nodes(),
      [&](const SphereNode& node, std::array<double, 4>& v) {
        const NullDirection dir(node.direction, orient);
        const FourVectorCo grad =
            scalar_gradient(src, Event{t, node.direction * r}, orient, rule);
        const double psi = extract_psi(grad, dir).psi;
        const FourVectorCo k = dir.k_co();
        for (std::size_t mu = 0; mu < 4; ++mu)
          v[mu] = psi * psi * k[mu] / kFourPi;
      },
      "scalar_flux_asymptotic");

  FluxVector w;
  w.W = {{total[0], total[1], total[2], total[3]}};
  w.radius = r;
  w.method = FluxVector::Method::kAsymptoticAmplitude;
  return w;
}

FluxVector em_flux_asymptotic(const CurrentSource& src, Orientation orient,
                              double u0, const SphereRule& sphere,
                              const VolumeRule& rule) {
  require_sphere_outside(sphere, src.support(), "em_flux_asymptotic");
  const double r = sphere.radius();
  const double t = locked_time(orient, u0, r);

  const auto total = integrate_node_components<4>(
      sphere.nodes(),
      [&](const SphereNode& node, std::array<double, 4>& v) {
        const NullDirection dir(node.direction, orient);
        const PotentialSample s =
            vector_potential(src, Event{t, node.direction * r}, orient, rule);
        const FourVectorCo b = extract_B(s.jacobian);
        const FourVectorCo k = dir.k_co();
        const double b2 = minkowski_norm2(b);
        for (std::size_t mu = 0; mu < 4; ++mu)
          v[mu] = -b2 * k[mu] / kFourPi;
      },
      "em_flux_asymptotic");

  FluxVector w;
  w.W = {{total[0], total[1], total[2], total[3]}};
  w.radius = r;
  w.method = FluxVector::Method::kAsymptoticAmplitude;
  return w;
}

double gauss_charge(const CurrentSource& src, double radius, double time,
                    const SphereRule& sphere, const VolumeRule& rule) {
  const SphereRule shell =
      sphere.radius() == radius ? sphere : sphere.rebuilt(radius);
  require_sphere_outside(shell, src.support(), "gauss_charge");
  return integrate_sphere(
             [&](const Vec3& n) {
               const PotentialSample s = vector_potential(
                   src, Event{time, n * radius}, Orientation::kRetarded, rule);
               return electric_field(s.field).dot(n);
             },
             shell) /
         kFourPi;
}

}  // namespace fieldcheck
