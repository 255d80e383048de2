#include "fieldcheck/minkowski.hpp"

#include <cmath>

#include "fieldcheck/errors.hpp"

namespace fieldcheck {

FourVectorContra raise(const FourVectorCo& v) {
  return {{v.c[0], -v.c[1], -v.c[2], -v.c[3]}};
}

FourVectorCo lower(const FourVectorContra& v) {
  return {{v.c[0], -v.c[1], -v.c[2], -v.c[3]}};
}

double contract(const FourVectorCo& a, const FourVectorContra& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

double minkowski_norm2(const FourVectorCo& a) {
  return a.c[0] * a.c[0] - a.c[1] * a.c[1] - a.c[2] * a.c[2] - a.c[3] * a.c[3];
}

Tensor2Contra raise_both(const Tensor2& t) {
  // eta is diagonal (+1,-1,-1,-1): component (mu,nu) picks up the product of
  // the two diagonal signs.
  Tensor2Contra r;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = 0; nu < 4; ++nu) {
      const double sign = (mu == 0 ? 1.0 : -1.0) * (nu == 0 ? 1.0 : -1.0);
      r(mu, nu) = sign * t(mu, nu);
    }
  }
  return r;
}

Tensor2 alternate(const Tensor2& grad) {
  Tensor2 f;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    f(mu, mu) = 0.0;
    for (std::size_t nu = mu + 1; nu < 4; ++nu) {
      const double v = grad(nu, mu) - grad(mu, nu);
      f(mu, nu) = v;
      f(nu, mu) = -v;  // mirrored, so antisymmetry is exact as stored
    }
  }
  return f;
}

bool is_antisymmetric(const Tensor2& t, double tol) {
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = mu; nu < 4; ++nu) {
      if (std::abs(t(mu, nu) + t(nu, mu)) > tol) return false;
    }
  }
  return true;
}

Tensor2 outer(const FourVectorCo& a, const FourVectorCo& b) {
  Tensor2 r;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = 0; nu < 4; ++nu) {
      r(mu, nu) = a.c[mu] * b.c[nu];
    }
  }
  return r;
}

Tensor2 wedge(const FourVectorCo& k, const FourVectorCo& b) {
  Tensor2 r;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    r(mu, mu) = 0.0;
    for (std::size_t nu = mu + 1; nu < 4; ++nu) {
      const double v = k.c[mu] * b.c[nu] - k.c[nu] * b.c[mu];
      r(mu, nu) = v;
      r(nu, mu) = -v;
    }
  }
  return r;
}

NullDirection::NullDirection(const Vec3& n, Orientation orientation)
    : n_(n), orientation_(orientation) {
  const double len = n.norm();
  if (!(len > 1e-300)) {
    throw PreconditionError("NullDirection: zero spatial direction");
  }
  n_ = n * (1.0 / len);
}

FourVectorContra NullDirection::k_contra() const {
  const double s = spatial_sign();
  return {{1.0, s * n_.x, s * n_.y, s * n_.z}};
}

FourVectorCo NullDirection::k_co() const {
  const double s = spatial_sign();
  return {{1.0, -s * n_.x, -s * n_.y, -s * n_.z}};
}

}  // namespace fieldcheck
