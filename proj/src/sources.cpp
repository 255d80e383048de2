#include "fieldcheck/sources.hpp"

#include <cmath>
#include <utility>

#include "fieldcheck/errors.hpp"

namespace fieldcheck {

double bump_normalization(double a) {
  return 3465.0 / (512.0 * M_PI * a * a * a);
}

double bump_profile(double s, double a) {
  if (s >= a) return 0.0;
  const double u = 1.0 - (s / a) * (s / a);
  const double u2 = u * u;
  return bump_normalization(a) * u2 * u2;
}

void ScalarSource::evaluate_with_dt(const Vec3& point, double time,
                                    double& value, double& dt) const {
  value = evaluate(point, time);
  dt = time_derivative(point, time);
}

void CurrentSource::evaluate_with_dt(const Vec3& point, double time,
                                     FourVectorContra& value,
                                     FourVectorContra& dt) const {
  value = evaluate(point, time);
  dt = time_derivative(point, time);
}

namespace {

class StaticMonopole : public ScalarSource {
public:
  StaticMonopole(double charge, double a, const Vec3& center)
      : charge_(charge), a_(a), center_(center) {}

  double evaluate(const Vec3& point, double) const override {
    return charge_ * bump_profile((point - center_).norm(), a_);
  }
  double time_derivative(const Vec3&, double) const override { return 0.0; }
  Support support() const override { return {center_, a_}; }

private:
  double charge_, a_;
  Vec3 center_;
};

class OscillatingMonopole : public ScalarSource {
public:
  OscillatingMonopole(double q0, double omega, double a, const Vec3& center)
      : q0_(q0), omega_(omega), a_(a), center_(center) {}

  double evaluate(const Vec3& point, double time) const override {
    return q0_ * std::sin(omega_ * time) *
           bump_profile((point - center_).norm(), a_);
  }
  double time_derivative(const Vec3& point, double time) const override {
    return q0_ * omega_ * std::cos(omega_ * time) *
           bump_profile((point - center_).norm(), a_);
  }
  void evaluate_with_dt(const Vec3& point, double time, double& value,
                        double& dt) const override {
    const double w = bump_profile((point - center_).norm(), a_);
    value = q0_ * std::sin(omega_ * time) * w;
    dt = q0_ * omega_ * std::cos(omega_ * time) * w;
  }
  Support support() const override { return {center_, a_}; }

private:
  double q0_, omega_, a_;
  Vec3 center_;
};

class StaticCharge : public CurrentSource {
public:
  StaticCharge(double charge, double a, const Vec3& center)
      : charge_(charge), a_(a), center_(center) {}

  FourVectorContra evaluate(const Vec3& point, double) const override {
    FourVectorContra j;
    j[0] = charge_ * bump_profile((point - center_).norm(), a_);
    return j;
  }
  FourVectorContra time_derivative(const Vec3&, double) const override {
    return {};
  }
  Support support() const override { return {center_, a_}; }

private:
  double charge_, a_;
  Vec3 center_;
};

class HertzianDipole : public CurrentSource {
public:
  HertzianDipole(double p0, double omega, double a, const Vec3& axis,
                 const Vec3& center)
      : p0_(p0), omega_(omega), a_(a), center_(center) {
    const double n = axis.norm();
    if (n < 1e-300) throw PreconditionError("hertzian_dipole: zero axis");
    axis_ = axis * (1.0 / n);
  }

  FourVectorContra evaluate(const Vec3& point, double time) const override {
    FourVectorContra j, jdot;
    evaluate_with_dt(point, time, j, jdot);
    return j;
  }
  FourVectorContra time_derivative(const Vec3& point,
                                   double time) const override {
    FourVectorContra j, jdot;
    evaluate_with_dt(point, time, j, jdot);
    return jdot;
  }
  void evaluate_with_dt(const Vec3& point, double time, FourVectorContra& value,
                        FourVectorContra& dt) const override {
    value = {};
    dt = {};
    const Vec3 d = point - center_;
    const double s = d.norm();
    if (s >= a_) return;

    const double p = p0_ * std::sin(omega_ * time);
    const double pdot = p0_ * omega_ * std::cos(omega_ * time);
    const double pddot = -omega_ * omega_ * p;

    const double w = bump_profile(s, a_);
    // (axis . grad) w = -8 C (1 - (s/a)^2)^3 (axis . d) / a^2; regular at s=0.
    const double u = 1.0 - (s / a_) * (s / a_);
    const double axis_grad_w = -8.0 * bump_normalization(a_) * u * u * u *
                               axis_.dot(d) / (a_ * a_);

    value[0] = -p * axis_grad_w;
    dt[0] = -pdot * axis_grad_w;
    for (int k = 0; k < 3; ++k) {
      value[static_cast<std::size_t>(k + 1)] = pdot * w * axis_[k];
      dt[static_cast<std::size_t>(k + 1)] = pddot * w * axis_[k];
    }
  }
  Support support() const override { return {center_, a_}; }

private:
  double p0_, omega_, a_;
  Vec3 axis_, center_;
};

// Ball covering every part: centroid of part centers, radius expanded to
// reach the farthest part boundary.
template <typename Source>
Support covering_support(
    const std::vector<std::shared_ptr<const Source>>& parts) {
  Vec3 c;
  for (const auto& p : parts) c = c + p->support().center;
  c = c * (1.0 / static_cast<double>(parts.size()));
  double radius = 0.0;
  for (const auto& p : parts) {
    const Support s = p->support();
    radius = std::max(radius, (s.center - c).norm() + s.radius);
  }
  return {c, radius};
}

class ScalarSum : public ScalarSource {
public:
  explicit ScalarSum(std::vector<std::shared_ptr<const ScalarSource>> parts)
      : parts_(std::move(parts)) {
    if (parts_.empty()) throw PreconditionError("scalar_sum: no parts");
    support_ = covering_support(parts_);
  }

  double evaluate(const Vec3& point, double time) const override {
    double v = 0.0;
    for (const auto& p : parts_) v += p->evaluate(point, time);
    return v;
  }
  double time_derivative(const Vec3& point, double time) const override {
    double v = 0.0;
    for (const auto& p : parts_) v += p->time_derivative(point, time);
    return v;
  }
  void evaluate_with_dt(const Vec3& point, double time, double& value,
                        double& dt) const override {
    value = 0.0;
    dt = 0.0;
    for (const auto& p : parts_) {
      double v, d;
      p->evaluate_with_dt(point, time, v, d);
      value += v;
      dt += d;
    }
  }
  Support support() const override { return support_; }

private:
  std::vector<std::shared_ptr<const ScalarSource>> parts_;
  Support support_;
};

class CurrentSum : public CurrentSource {
public:
  explicit CurrentSum(std::vector<std::shared_ptr<const CurrentSource>> parts)
      : parts_(std::move(parts)) {
    if (parts_.empty()) throw PreconditionError("current_sum: no parts");
    support_ = covering_support(parts_);
  }

  FourVectorContra evaluate(const Vec3& point, double time) const override {
    FourVectorContra v;
    for (const auto& p : parts_) {
      const FourVectorContra w = p->evaluate(point, time);
      for (std::size_t i = 0; i < 4; ++i) v[i] += w[i];
    }
    return v;
  }
  FourVectorContra time_derivative(const Vec3& point,
                                   double time) const override {
    FourVectorContra v;
    for (const auto& p : parts_) {
      const FourVectorContra w = p->time_derivative(point, time);
      for (std::size_t i = 0; i < 4; ++i) v[i] += w[i];
    }
    return v;
  }
  void evaluate_with_dt(const Vec3& point, double time, FourVectorContra& value,
                        FourVectorContra& dt) const override {
    value = {};
    dt = {};
    for (const auto& p : parts_) {
      FourVectorContra v, d;
      p->evaluate_with_dt(point, time, v, d);
      for (std::size_t i = 0; i < 4; ++i) {
        value[i] += v[i];
        dt[i] += d[i];
      }
    }
  }
  Support support() const override { return support_; }

private:
  std::vector<std::shared_ptr<const CurrentSource>> parts_;
  Support support_;
};

void require_covering(const VolumeRule& rule, const Support& s,
                      const char* what) {
  if (!rule.covers(s.center, s.radius)) {
    throw PreconditionError(std::string(what) +
                            ": quadrature rule does not cover the source "
                            "support ball");
  }
}

}  // namespace

std::shared_ptr<ScalarSource> static_monopole(double charge, double a,
                                              const Vec3& center) {
  return std::make_shared<StaticMonopole>(charge, a, center);
}

std::shared_ptr<ScalarSource> oscillating_monopole(double q0, double omega,
                                                   double a,
                                                   const Vec3& center) {
  return std::make_shared<OscillatingMonopole>(q0, omega, a, center);
}

std::shared_ptr<CurrentSource> static_charge(double charge, double a,
                                             const Vec3& center) {
  return std::make_shared<StaticCharge>(charge, a, center);
}

std::shared_ptr<CurrentSource> hertzian_dipole(double p0, double omega,
                                               double a, const Vec3& axis,
                                               const Vec3& center) {
  return std::make_shared<HertzianDipole>(p0, omega, a, axis, center);
}

std::shared_ptr<ScalarSource> scalar_sum(
    std::vector<std::shared_ptr<const ScalarSource>> parts) {
  return std::make_shared<ScalarSum>(std::move(parts));
}

std::shared_ptr<CurrentSource> current_sum(
    std::vector<std::shared_ptr<const CurrentSource>> parts) {
  return std::make_shared<CurrentSum>(std::move(parts));
}

double total_charge(const CurrentSource& src, double time,
                    const VolumeRule& rule) {
  require_covering(rule, src.support(), "total_charge");
  return integrate_volume(
      [&](const Vec3& p) { return src.evaluate(p, time)[0]; }, rule);
}

double total_charge(const ScalarSource& src, double time,
                    const VolumeRule& rule) {
  require_covering(rule, src.support(), "total_charge");
  return integrate_volume([&](const Vec3& p) { return src.evaluate(p, time); },
                          rule);
}

double continuity_residual(const CurrentSource& src, double time,
                           const VolumeRule& rule) {
  const Support sup = src.support();
  const double h = sup.radius / 200.0;

  double max_residual = 0.0;
  double max_j = 0.0;
  for (const QuadNode& node : rule.nodes()) {
    const FourVectorContra j = src.evaluate(node.point, time);
    const FourVectorContra jdot = src.time_derivative(node.point, time);
    for (std::size_t i = 0; i < 4; ++i)
      max_j = std::max(max_j, std::abs(j[i]));

    double div = 0.0;
    for (int k = 0; k < 3; ++k) {
      Vec3 step;
      (k == 0 ? step.x : (k == 1 ? step.y : step.z)) = h;
      const FourVectorContra jp = src.evaluate(node.point + step, time);
      const FourVectorContra jm = src.evaluate(node.point - step, time);
      div += (jp[static_cast<std::size_t>(k + 1)] -
              jm[static_cast<std::size_t>(k + 1)]) /
             (2.0 * h);
    }
    max_residual = std::max(max_residual, std::abs(jdot[0] + div));
  }
  if (max_j == 0.0) return 0.0;
  return max_residual / (max_j / sup.radius);
}

}  // namespace fieldcheck
