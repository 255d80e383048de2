#include "fieldcheck/solver.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <type_traits>
#include <vector>

#include "fieldcheck/errors.hpp"
#include "fieldcheck/parallel.hpp"

namespace fieldcheck {

namespace {

constexpr double kOutsideBuffer = 1.01;

template <int N, typename Eval>
std::array<double, N> integrate_components(const VolumeRule& rule,
                                           const Eval& eval) {
  return integrate_node_components<N>(
      rule.nodes(),
      [&](const QuadNode& node, std::array<double, N>& v) {
        eval(node.point, v);
      },
      "kernel quadrature");
}

struct Kernel {
  double R;        // |x - x'|
  double t_src;    // t -+ R
  Vec3 direction;  // (x - x')/R
};

Kernel kernel_geometry(const Event& ev, const Vec3& node, double sign_time,
                       double a) {
  const Vec3 d = ev.pos - node;
  const double R = d.norm();
  if (R < 1e-9 * a) {
    std::ostringstream os;
    os << "kernel quadrature: node within 1e-9 a of the field point (R = "
       << R << ")";
    throw NumericalError(os.str());
  }
  return {R, ev.t + sign_time * R, d * (1.0 / R)};
}

double time_sign(Orientation o) {
  return o == Orientation::kRetarded ? -1.0 : 1.0;
}

void require_outside(const Event& ev, const Support& sup, const char* what) {
  const double dist = (ev.pos - sup.center).norm();
  if (dist <= kOutsideBuffer * sup.radius) {
    std::ostringstream os;
    os << what << ": event at distance " << dist
       << " from the support center is not outside the support ball (radius "
       << sup.radius << ", buffer factor " << kOutsideBuffer << "), at (t="
       << ev.t << ", x=" << ev.pos.x << ", y=" << ev.pos.y << ", z="
       << ev.pos.z << ")";
    throw PreconditionError(os.str());
  }
}

void require_covering(const VolumeRule& rule, const Support& sup,
                      const char* what) {
  if (!rule.covers(sup.center, sup.radius)) {
    throw PreconditionError(std::string(what) +
                            ": quadrature rule does not cover the source "
                            "support ball");
  }
}

}  // namespace

double scalar_potential(const ScalarSource& src, const Event& ev,
                        Orientation orient, const VolumeRule& rule) {
  const Support sup = src.support();
  require_covering(rule, sup, "scalar_potential");
  const double sign = time_sign(orient);
  const double dist = (ev.pos - sup.center).norm();

  const auto run = [&](const VolumeRule& r) {
    return integrate_components<1>(
        r, [&](const Vec3& p, std::array<double, 1>& v) {
          const Kernel k = kernel_geometry(ev, p, sign, sup.radius);
          v[0] = src.evaluate(p, k.t_src) / k.R;
        });
  };
  // Near or inside the support the kernel is (almost) singular on the given
  // rule; re-center on the field point so the radial measure cancels 1/R.
  const auto total = dist <= kOutsideBuffer * sup.radius
                         ? run(rule.rebuilt(ev.pos, dist + sup.radius))
                         : run(rule);
  return total[0];
}

FieldSample scalar_sample(const ScalarSource& src, const Event& ev,
                          Orientation orient, const VolumeRule& rule) {
  const Support sup = src.support();
  require_outside(ev, sup, "scalar_sample");
  require_covering(rule, sup, "scalar_sample");
  const double sign = time_sign(orient);

  const auto total = integrate_components<5>(
      rule, [&](const Vec3& p, std::array<double, 5>& v) {
        const Kernel k = kernel_geometry(ev, p, sign, sup.radius);
        double rho, rho_dot;
        src.evaluate_with_dt(p, k.t_src, rho, rho_dot);
        v[0] = rho / k.R;
        v[1] = rho_dot / k.R;
        const double radial = sign * rho_dot / k.R - rho / (k.R * k.R);
        v[2] = radial * k.direction.x;
        v[3] = radial * k.direction.y;
        v[4] = radial * k.direction.z;
      });

  FieldSample s;
  s.value = total[0];
  s.gradient = {{total[1], total[2], total[3], total[4]}};
  return s;
}

FourVectorCo scalar_gradient(const ScalarSource& src, const Event& ev,
                             Orientation orient, const VolumeRule& rule) {
  return scalar_sample(src, ev, orient, rule).gradient;
}

FourVectorContra vector_potential_value(const CurrentSource& src,
                                        const Event& ev, Orientation orient,
                                        const VolumeRule& rule) {
  const Support sup = src.support();
  require_covering(rule, sup, "vector_potential_value");
  const double sign = time_sign(orient);
  const double dist = (ev.pos - sup.center).norm();

  const auto run = [&](const VolumeRule& r) {
    return integrate_components<4>(
        r, [&](const Vec3& p, std::array<double, 4>& v) {
          const Kernel k = kernel_geometry(ev, p, sign, sup.radius);
          const FourVectorContra j = src.evaluate(p, k.t_src);
          for (std::size_t mu = 0; mu < 4; ++mu) v[mu] = j[mu] / k.R;
        });
  };
  const auto total = dist <= kOutsideBuffer * sup.radius
                         ? run(rule.rebuilt(ev.pos, dist + sup.radius))
                         : run(rule);

  FourVectorContra a;
  for (std::size_t mu = 0; mu < 4; ++mu) a[mu] = total[mu];
  return a;
}

PotentialSample vector_potential(const CurrentSource& src, const Event& ev,
                                 Orientation orient, const VolumeRule& rule) {
  const Support sup = src.support();
  require_outside(ev, sup, "vector_potential");
  require_covering(rule, sup, "vector_potential");
  const double sign = time_sign(orient);

  // Per node: 4 potential components + 16 jacobian entries, all covariant
  // except the potential. Layout: [0..3] A^mu, [4 + 4*rho + sigma] the
  // integrand of A_{rho,sigma}.
  const auto total = integrate_components<20>(
      rule, [&](const Vec3& p, std::array<double, 20>& v) {
        const Kernel k = kernel_geometry(ev, p, sign, sup.radius);
        FourVectorContra j, j_dot;
        src.evaluate_with_dt(p, k.t_src, j, j_dot);
        const FourVectorCo jc = lower(j);
        const FourVectorCo jc_dot = lower(j_dot);
        for (std::size_t mu = 0; mu < 4; ++mu) v[mu] = j[mu] / k.R;
        for (std::size_t rho = 0; rho < 4; ++rho) {
          v[4 + 4 * rho + 0] = jc_dot[rho] / k.R;
          const double radial =
              sign * jc_dot[rho] / k.R - jc[rho] / (k.R * k.R);
          v[4 + 4 * rho + 1] = radial * k.direction.x;
          v[4 + 4 * rho + 2] = radial * k.direction.y;
          v[4 + 4 * rho + 3] = radial * k.direction.z;
        }
      });

  PotentialSample s;
  for (std::size_t mu = 0; mu < 4; ++mu) s.potential[mu] = total[mu];
  for (std::size_t rho = 0; rho < 4; ++rho)
    for (std::size_t sigma = 0; sigma < 4; ++sigma)
      s.jacobian(rho, sigma) = total[4 + 4 * rho + sigma];
  s.field = alternate(s.jacobian);
  s.lorenz = s.jacobian(0, 0) - s.jacobian(1, 1) - s.jacobian(2, 2) -
             s.jacobian(3, 3);
  return s;
}

namespace {

template <typename Value, typename Eval>
double stencil_residual(const Event& ev, double h, const Eval& eval_at) {
  // 13-point second-difference stencil: laplacian minus d^2/dt^2.
  const Value center = eval_at(ev);
  Value lap{};
  for (int axis = 0; axis < 3; ++axis) {
    Event plus = ev, minus = ev;
    (axis == 0 ? plus.pos.x : (axis == 1 ? plus.pos.y : plus.pos.z)) += h;
    (axis == 0 ? minus.pos.x : (axis == 1 ? minus.pos.y : minus.pos.z)) -= h;
    lap = lap + eval_at(plus) + eval_at(minus) - center * 2.0;
  }
  Event tp = ev, tm = ev;
  tp.t += h;
  tm.t -= h;
  const Value tt = eval_at(tp) + eval_at(tm) - center * 2.0;
  const Value residual = (lap - tt) * (1.0 / (h * h));
  if constexpr (std::is_same_v<Value, double>) {
    return std::abs(residual);
  } else {
    double m = 0.0;
    for (std::size_t mu = 0; mu < 4; ++mu)
      m = std::max(m, std::abs(residual[mu]));
    return m;
  }
}

struct ContraValue {
  FourVectorContra v;
  ContraValue operator+(const ContraValue& o) const {
    ContraValue r;
    for (std::size_t i = 0; i < 4; ++i) r.v[i] = v[i] + o.v[i];
    return r;
  }
  ContraValue operator-(const ContraValue& o) const {
    ContraValue r;
    for (std::size_t i = 0; i < 4; ++i) r.v[i] = v[i] - o.v[i];
    return r;
  }
  ContraValue operator*(double s) const {
    ContraValue r;
    for (std::size_t i = 0; i < 4; ++i) r.v[i] = v[i] * s;
    return r;
  }
  double operator[](std::size_t i) const { return v[i]; }
};

}  // namespace

double wave_residual(const ScalarSource& src, const Event& ev,
                     Orientation orient, const VolumeRule& rule, double h) {
  return stencil_residual<double>(ev, h, [&](const Event& e) {
    return scalar_potential(src, e, orient, rule);
  });
}

double wave_residual(const CurrentSource& src, const Event& ev,
                     Orientation orient, const VolumeRule& rule, double h) {
  return stencil_residual<ContraValue>(ev, h, [&](const Event& e) {
    return ContraValue{vector_potential_value(src, e, orient, rule)};
  });
}

Vec3 electric_field(const Tensor2& f) {
  return {f(0, 1), f(0, 2), f(0, 3)};
}

Vec3 magnetic_field(const Tensor2& f) {
  return {-f(2, 3), -f(3, 1), -f(1, 2)};
}

FourVectorCo GaugeWave::gradient(const Event& ev) const {
  const double r = ev.radius();
  const Vec3 n = ev.direction();
  const double sr = orient_ == Orientation::kRetarded ? 1.0 : -1.0;
  const double u = ev.t - sr * r;
  const double h0 = std::sin(omega_ * u);
  const double h1 = omega_ * std::cos(omega_ * u);
  const double c = amplitude_;

  FourVectorCo g;
  g[0] = c * h1 / r;
  const double radial = -c * (sr * h1 / r + h0 / (r * r));
  g[1] = radial * n.x;
  g[2] = radial * n.y;
  g[3] = radial * n.z;
  return g;
}

Tensor2 GaugeWave::hessian(const Event& ev) const {
  const double r = ev.radius();
  const Vec3 n = ev.direction();
  const double sr = orient_ == Orientation::kRetarded ? 1.0 : -1.0;
  const double u = ev.t - sr * r;
  const double h0 = std::sin(omega_ * u);
  const double h1 = omega_ * std::cos(omega_ * u);
  const double h2 = -omega_ * omega_ * h0;
  const double c = amplitude_;

  Tensor2 hess;
  hess(0, 0) = c * h2 / r;
  const double mixed = -c * (sr * h2 / r + h1 / (r * r));
  const double tangent = -c * (sr * h1 / (r * r) + h0 / (r * r * r));
  const double radial =
      c * (h2 / r + 2.0 * sr * h1 / (r * r) + 2.0 * h0 / (r * r * r));
  for (std::size_t s = 1; s <= 3; ++s) {
    const double ns = n[static_cast<int>(s) - 1];
    hess(0, s) = mixed * ns;
    hess(s, 0) = hess(0, s);
    for (std::size_t k = s; k <= 3; ++k) {
      const double nk = n[static_cast<int>(k) - 1];
      const double delta = s == k ? 1.0 : 0.0;
      hess(s, k) = tangent * (delta - ns * nk) + radial * ns * nk;
      hess(k, s) = hess(s, k);
    }
  }
  return hess;
}

PotentialSample GaugeWave::apply(const PotentialSample& sample,
                                 const Event& ev) const {
  const FourVectorCo g = gradient(ev);
  const Tensor2 h = hessian(ev);

  PotentialSample out = sample;
  const FourVectorContra g_up = raise(g);
  for (std::size_t mu = 0; mu < 4; ++mu) out.potential[mu] += g_up[mu];
  out.jacobian = sample.jacobian + h;
  out.field = alternate(out.jacobian);
  out.lorenz = sample.lorenz + h(0, 0) - h(1, 1) - h(2, 2) - h(3, 3);
  return out;
}

}  // namespace fieldcheck
