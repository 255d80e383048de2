#pragma once

// Flat-spacetime conventions used everywhere in fieldcheck.
//
// Signature (+,-,-,-): eta^{00} = 1, eta^{ik} = -delta^{ik}. Index 0 is time,
// 1..3 are Cartesian x,y,z, with c = 1. Covariant and contravariant vectors
// are distinct types so that a contraction without the metric is a
// compile-time error.
//
// Two-index alternation convention: for a gradient-like tensor G holding
// A_{rho,sigma}, alternate(G)_{mu nu} = G_{nu mu} - G_{mu nu}, with no 1/2
// factor. This is the convention under which the antisymmetrized potential
// jacobian equals the field tensor k_mu B_nu - k_nu B_mu in the wave zone.

#include <array>
#include <cmath>
#include <cstddef>

namespace fieldcheck {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// An event x^alpha = (t, x, y, z).
struct Event {
  double t = 0.0;
  Vec3 pos;

  double radius() const { return pos.norm(); }
  // Unit spatial direction x/r; only meaningful for radius() > 0.
  Vec3 direction() const {
    const double r = radius();
    return {pos.x / r, pos.y / r, pos.z / r};
  }
};

struct FourVectorCo {
  std::array<double, 4> c{};

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
  FourVectorCo operator+(const FourVectorCo& o) const {
    return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]}};
  }
  FourVectorCo operator-(const FourVectorCo& o) const {
    return {{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]}};
  }
  FourVectorCo operator*(double s) const {
    return {{c[0] * s, c[1] * s, c[2] * s, c[3] * s}};
  }
  // Euclidean norm over the stored components (no metric).
  double euclidean_norm() const {
    return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
  }
};

struct FourVectorContra {
  std::array<double, 4> c{};

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
};

// Raise with eta: component 0 unchanged, spatial components negated.
FourVectorContra raise(const FourVectorCo& v);
// Lower with eta; inverse of raise.
FourVectorCo lower(const FourVectorContra& v);

// a_nu b^nu (summation over 0..3). Mixed index positions by construction.
double contract(const FourVectorCo& a, const FourVectorContra& b);

// eta^{rho sigma} a_rho a_sigma.
double minkowski_norm2(const FourVectorCo& a);

enum class IndexPos { kCo, kContra };

// Rank-2 tensor with type-level index positions. Component (mu, nu):
// first index mu selects the row.
template <IndexPos P1, IndexPos P2>
struct Tensor2T {
  std::array<double, 16> m{};

  double& operator()(std::size_t mu, std::size_t nu) { return m[4 * mu + nu]; }
  double operator()(std::size_t mu, std::size_t nu) const {
    return m[4 * mu + nu];
  }
  Tensor2T operator+(const Tensor2T& o) const {
    Tensor2T r;
    for (std::size_t i = 0; i < 16; ++i) r.m[i] = m[i] + o.m[i];
    return r;
  }
  Tensor2T operator-(const Tensor2T& o) const {
    Tensor2T r;
    for (std::size_t i = 0; i < 16; ++i) r.m[i] = m[i] - o.m[i];
    return r;
  }
  Tensor2T operator*(double s) const {
    Tensor2T r;
    for (std::size_t i = 0; i < 16; ++i) r.m[i] = m[i] * s;
    return r;
  }
  double frobenius_norm() const {
    double s = 0.0;
    for (double v : m) s += v * v;
    return std::sqrt(s);
  }
  double max_abs() const {
    double s = 0.0;
    for (double v : m) s = std::max(s, std::abs(v));
    return s;
  }
};

// All tensors this library stores are covariant-covariant: A_{rho,sigma},
// f_{mu nu}, T_{mu nu}.
using Tensor2 = Tensor2T<IndexPos::kCo, IndexPos::kCo>;
using Tensor2Contra = Tensor2T<IndexPos::kContra, IndexPos::kContra>;

// Raise both indices with eta (sign flips on time-space blocks).
Tensor2Contra raise_both(const Tensor2& t);

// Antisymmetrize a gradient tensor holding A_{rho,sigma} (first index:
// component, second: derivative): returns f_{mu nu} = A_{nu,mu} - A_{mu,nu}.
// The result is exactly antisymmetric as stored.
Tensor2 alternate(const Tensor2& grad);

bool is_antisymmetric(const Tensor2& t, double tol);

// Outer product a_mu b_nu.
Tensor2 outer(const FourVectorCo& a, const FourVectorCo& b);

// Wedge k_mu b_nu - k_nu b_mu.
Tensor2 wedge(const FourVectorCo& k, const FourVectorCo& b);

enum class Orientation { kRetarded, kAdvanced };

inline const char* to_string(Orientation o) {
  return o == Orientation::kRetarded ? "retarded" : "advanced";
}

// An asymptotic null direction: spatial unit vector n plus orientation.
// The derived four-vector k^sigma = (1, n) for retarded, (1, -n) for
// advanced, is null by construction. Its covariant form has k_0 = 1 in both
// orientations.
class NullDirection {
public:
  // Normalizes n; throws PreconditionError when |n| is too small to define
  // a direction.
  NullDirection(const Vec3& n, Orientation orientation);

  const Vec3& unit() const { return n_; }
  Orientation orientation() const { return orientation_; }

  // +1 for retarded, -1 for advanced: the sign of n inside k^sigma.
  double spatial_sign() const {
    return orientation_ == Orientation::kRetarded ? 1.0 : -1.0;
  }

  FourVectorContra k_contra() const;
  FourVectorCo k_co() const;

private:
  Vec3 n_;
  Orientation orientation_;
};

}  // namespace fieldcheck
