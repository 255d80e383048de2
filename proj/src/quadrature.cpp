#include "fieldcheck/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "fieldcheck/errors.hpp"
#include "fieldcheck/parallel.hpp"

namespace fieldcheck {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  // Newton iteration on P_n with the Chebyshev-like initial guess; nodes
  // come out symmetric, so only half are computed.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    nodes[static_cast<std::size_t>(i)] = -x;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
    weights[static_cast<std::size_t>(i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

namespace {

void check_orders(int radial, int polar, int azimuthal) {
  if (radial < 4 || polar < 2 || azimuthal < 4) {
    std::ostringstream os;
    os << "quadrature orders below minimum (radial >= 4, polar >= 2, "
          "azimuthal >= 4): got "
       << radial << "/" << polar << "/" << azimuthal;
    throw NumericalError(os.str());
  }
}

int scale_order(int n, double factor, int minimum) {
  const int scaled = static_cast<int>(std::lround(n * factor));
  return scaled < minimum ? minimum : scaled;
}

}  // namespace

VolumeRule::VolumeRule(const Vec3& center, double radius, int radial_order,
                       int polar_order, int azimuthal_order)
    : center_(center),
      radius_(radius),
      radial_order_(radial_order),
      polar_order_(polar_order),
      azimuthal_order_(azimuthal_order) {
  check_orders(radial_order, polar_order, azimuthal_order);
  if (!(radius > 0.0)) throw NumericalError("VolumeRule: radius must be > 0");

  std::vector<double> xr, wr, xc, wc;
  gauss_legendre(radial_order, xr, wr);
  gauss_legendre(polar_order, xc, wc);

  nodes_.reserve(static_cast<std::size_t>(radial_order) * polar_order *
                 azimuthal_order);
  const double wphi = 2.0 * M_PI / azimuthal_order;
  for (int i = 0; i < radial_order; ++i) {
    const double s = 0.5 * radius * (xr[static_cast<std::size_t>(i)] + 1.0);
    const double ws = 0.5 * radius * wr[static_cast<std::size_t>(i)];
    for (int j = 0; j < polar_order; ++j) {
      const double ct = xc[static_cast<std::size_t>(j)];
      const double st = std::sqrt(1.0 - ct * ct);
      const double wj = wc[static_cast<std::size_t>(j)];
      for (int k = 0; k < azimuthal_order; ++k) {
        const double phi = 2.0 * M_PI * k / azimuthal_order;
        const Vec3 p{center.x + s * st * std::cos(phi),
                     center.y + s * st * std::sin(phi), center.z + s * ct};
        nodes_.push_back({p, ws * wj * wphi * s * s});
      }
    }
  }
}

VolumeRule VolumeRule::scaled_orders(double factor) const {
  return VolumeRule(center_, radius_, scale_order(radial_order_, factor, 4),
                    scale_order(polar_order_, factor, 2),
                    scale_order(azimuthal_order_, factor, 4));
}

bool VolumeRule::covers(const Vec3& ball_center, double ball_radius) const {
  return (ball_center - center_).norm() + ball_radius <= radius_ * (1.0 + 1e-12);
}

SphereRule::SphereRule(double radius, int polar_order, int azimuthal_order)
    : radius_(radius),
      polar_order_(polar_order),
      azimuthal_order_(azimuthal_order) {
  check_orders(4, polar_order, azimuthal_order);
  if (!(radius > 0.0)) throw NumericalError("SphereRule: radius must be > 0");

  std::vector<double> xc, wc;
  gauss_legendre(polar_order, xc, wc);
  nodes_.reserve(static_cast<std::size_t>(polar_order) * azimuthal_order);
  const double wphi = 2.0 * M_PI / azimuthal_order;
  for (int j = 0; j < polar_order; ++j) {
    const double ct = xc[static_cast<std::size_t>(j)];
    const double st = std::sqrt(1.0 - ct * ct);
    for (int k = 0; k < azimuthal_order; ++k) {
      const double phi = 2.0 * M_PI * k / azimuthal_order;
      nodes_.push_back({{st * std::cos(phi), st * std::sin(phi), ct},
                        wc[static_cast<std::size_t>(j)] * wphi * radius *
                            radius});
    }
  }
}

SphereRule SphereRule::scaled_orders(double factor) const {
  return SphereRule(radius_, scale_order(polar_order_, factor, 2),
                    scale_order(azimuthal_order_, factor, 4));
}

double integrate_volume(const std::function<double(const Vec3&)>& f,
                        const VolumeRule& rule) {
  return integrate_node_components<1>(
      rule.nodes(),
      [&](const QuadNode& n, std::array<double, 1>& v) { v[0] = f(n.point); },
      "integrate_volume")[0];
}

double integrate_sphere(const std::function<double(const Vec3&)>& g,
                        const SphereRule& rule) {
  return integrate_node_components<1>(
      rule.nodes(),
      [&](const SphereNode& n, std::array<double, 1>& v) {
        v[0] = g(n.direction);
      },
      "integrate_sphere")[0];
}

}  // namespace fieldcheck
