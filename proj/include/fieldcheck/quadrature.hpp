#pragma once

// Deterministic product quadrature over the source ball and over spheres.
//
// Both rules are Gauss-Legendre in radius and in cos(theta) and uniform
// trapezoid in azimuth (exact for trigonometric azimuthal dependence).
// Node lists are precomputed once per rule and reused; reduction is
// pairwise over fixed chunks, so results are bit-reproducible regardless
// of how many worker threads evaluate the integrand.

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "fieldcheck/errors.hpp"
#include "fieldcheck/minkowski.hpp"
#include "fieldcheck/parallel.hpp"

namespace fieldcheck {

// Pairwise (cascade) summation in a fixed order.
double pairwise_sum(std::span<const double> values);

// 1D Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

struct QuadNode {
  Vec3 point;
  double weight;
};

// Product rule over a ball: radial order x polar order x azimuthal order.
class VolumeRule {
public:
  // Throws NumericalError when orders are below the documented minimum
  // (radial 4, polar 2, azimuthal 4).
  VolumeRule(const Vec3& center, double radius, int radial_order,
             int polar_order, int azimuthal_order);

  const std::vector<QuadNode>& nodes() const { return nodes_; }
  const Vec3& center() const { return center_; }
  double radius() const { return radius_; }
  int radial_order() const { return radial_order_; }
  int polar_order() const { return polar_order_; }
  int azimuthal_order() const { return azimuthal_order_; }

  // Same orders, different geometry.
  VolumeRule rebuilt(const Vec3& center, double radius) const {
    return VolumeRule(center, radius, radial_order_, polar_order_,
                      azimuthal_order_);
  }
  // Orders scaled by the given factor (at least the minimum orders).
  VolumeRule scaled_orders(double factor) const;

  bool covers(const Vec3& ball_center, double ball_radius) const;

private:
  Vec3 center_;
  double radius_;
  int radial_order_, polar_order_, azimuthal_order_;
  std::vector<QuadNode> nodes_;
};

struct SphereNode {
  Vec3 direction;  // unit
  double weight;   // includes the r^2 area factor
};

// Product rule over a sphere of given radius centered at the origin.
class SphereRule {
public:
  SphereRule(double radius, int polar_order, int azimuthal_order);

  const std::vector<SphereNode>& nodes() const { return nodes_; }
  double radius() const { return radius_; }
  int polar_order() const { return polar_order_; }
  int azimuthal_order() const { return azimuthal_order_; }

  SphereRule rebuilt(double radius) const {
    return SphereRule(radius, polar_order_, azimuthal_order_);
  }
  SphereRule scaled_orders(double factor) const;

private:
  double radius_;
  int polar_order_, azimuthal_order_;
  std::vector<SphereNode> nodes_;
};

// Sum of w_i f(p_i). Throws NumericalError (naming the node) on a
// non-finite integrand value. Evaluation may be spread over worker
// threads; the reduction order is fixed.
double integrate_volume(const std::function<double(const Vec3&)>& f,
                        const VolumeRule& rule);

// Sum of w_i g(n_i) over sphere nodes; weights carry the area factor.
double integrate_sphere(const std::function<double(const Vec3&)>& g,
                        const SphereRule& rule);

// N integrand components accumulated in one pass over a node list
// (QuadNode or SphereNode). eval(node, out) fills all N values for one
// node. Chunk partials are accumulated serially in node order and reduced
// pairwise per component, so results do not depend on the worker count.
template <int N, typename Node, typename Eval>
std::array<double, N> integrate_node_components(const std::vector<Node>& nodes,
                                                const Eval& eval,
                                                const char* what) {
  const std::size_t n = nodes.size();
  const std::size_t chunks = chunk_count(n);
  std::vector<double> sums(chunks * N, 0.0);
  for_each_chunk(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::array<double, N> acc{};
    std::array<double, N> v{};
    for (std::size_t i = begin; i < end; ++i) {
      eval(nodes[i], v);
      for (int j = 0; j < N; ++j) {
        if (!std::isfinite(v[static_cast<std::size_t>(j)])) {
          std::ostringstream os;
          os << what << ": non-finite integrand component " << j
             << " at node " << i;
          throw NumericalError(os.str());
        }
        acc[static_cast<std::size_t>(j)] +=
            v[static_cast<std::size_t>(j)] * nodes[i].weight;
      }
    }
    for (int j = 0; j < N; ++j)
      sums[c * N + static_cast<std::size_t>(j)] =
          acc[static_cast<std::size_t>(j)];
  });
  std::array<double, N> total{};
  std::vector<double> column(chunks);
  for (int j = 0; j < N; ++j) {
    for (std::size_t c = 0; c < chunks; ++c)
      column[c] = sums[c * N + static_cast<std::size_t>(j)];
    total[static_cast<std::size_t>(j)] = pairwise_sum(column);
  }
  return total;
}

}  // namespace fieldcheck
