#include "fieldcheck/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fieldcheck/errors.hpp"

namespace fieldcheck {

Event RayLadder::event_at(std::size_t i) const {
  const double r = radii[i];
  return {u0 + direction.spatial_sign() * r, direction.unit() * r};
}

RayLadder make_ray_ladder(const NullDirection& direction, double u0, double r0,
                          double growth, int rungs) {
  if (!(r0 > 0.0))
    throw PreconditionError("make_ray_ladder: r0 must be positive");
  if (!(growth > 1.0))
    throw PreconditionError("make_ray_ladder: growth must exceed 1");
  if (rungs < 1) throw PreconditionError("make_ray_ladder: no rungs");
  RayLadder ladder{direction, u0, {}};
  ladder.radii.reserve(static_cast<std::size_t>(rungs));
  double r = r0;
  for (int i = 0; i < rungs; ++i) {
    ladder.radii.push_back(r);
    r *= growth;
  }
  return ladder;
}

double default_ladder_r0(double a, double omega) {
  const double wavelength_factor = omega > 0.0 ? std::max(1.0, 1.0 / omega)
                                               : 1.0;
  return 20.0 * a * wavelength_factor;
}

FalloffFit fit_falloff(std::span<const double> radii,
                       std::span<const double> values) {
  if (radii.size() != values.size())
    throw PreconditionError("fit_falloff: mismatched sample arrays");

  std::vector<double> lr, lv;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (std::abs(values[i]) < kAmplitudeFloor) continue;
    lr.push_back(std::log(radii[i]));
    lv.push_back(std::log(std::abs(values[i])));
  }
  if (lr.size() < 4) {
    std::ostringstream os;
    os << "fit_falloff: only " << lr.size()
       << " samples above the amplitude floor (need 4)";
    throw InsufficientDataError(os.str());
  }

  const double n = static_cast<double>(lr.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    sx += lr[i];
    sy += lv[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    sxx += (lr[i] - mx) * (lr[i] - mx);
    sxy += (lr[i] - mx) * (lv[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  FalloffFit fit;
  fit.exponent = -slope;
  fit.amplitude = std::exp(intercept);
  fit.used = static_cast<int>(lr.size());
  for (std::size_t i = 0; i < lr.size(); ++i) {
    fit.max_residual = std::max(
        fit.max_residual, std::abs(lv[i] - (intercept + slope * lr[i])));
  }
  return fit;
}

PsiExtraction extract_psi(const FourVectorCo& grad, const NullDirection& dir) {
  const FourVectorCo k = dir.k_co();
  double kk = 0.0, gk = 0.0;
  for (std::size_t nu = 0; nu < 4; ++nu) {
    kk += k[nu] * k[nu];
    gk += grad[nu] * k[nu];
  }
  PsiExtraction out;
  out.psi = gk / kk;
  out.residual = grad - k * out.psi;
  return out;
}

FourVectorCo extract_B(const Tensor2& jac) {
  return {{jac(0, 0), jac(1, 0), jac(2, 0), jac(3, 0)}};
}

namespace {

void check_ladder(const RayLadder& ladder, const Support& sup,
                  const char* what) {
  if (ladder.radii.size() < 4) {
    throw PreconditionError(std::string(what) +
                            ": ladder needs at least 4 rungs for fits");
  }
  double prev = 0.0;
  for (double r : ladder.radii) {
    if (r <= prev)
      throw PreconditionError(std::string(what) +
                              ": ladder radii must be strictly increasing");
    prev = r;
  }
  if (ladder.radii.front() <= 2.0 * sup.radius) {
    throw PreconditionError(std::string(what) +
                            ": innermost rung must exceed twice the support "
                            "radius");
  }
}

std::string format_detail(const FalloffFit& fit, std::size_t rungs) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "M=%.3e, used %d/%zu rungs, logfit err %.1e",
                fit.amplitude, fit.used, rungs, fit.max_residual);
  return buf;
}

ConditionCheck exponent_check(const std::string& name,
                              std::span<const double> radii,
                              std::span<const double> values,
                              double threshold) {
  ConditionCheck c;
  c.name = name;
  c.threshold = threshold;
  std::size_t usable = 0;
  for (double v : values)
    if (std::abs(v) >= kAmplitudeFloor) ++usable;
  if (usable < 4) {
    c.passed = true;
    c.vacuous = true;
    c.measured = 0.0;
    c.detail = "series at or below the amplitude floor; passes vacuously";
    return c;
  }
  const FalloffFit fit = fit_falloff(radii, values);
  c.measured = fit.exponent;
  c.amplitude = fit.amplitude;
  c.fit_residual = fit.max_residual;
  c.passed = fit.exponent >= threshold;
  c.detail = format_detail(fit, radii.size());
  return c;
}

void finalize(ConditionReport& report) {
  report.verdict = true;
  for (const ConditionCheck& c : report.checks)
    report.verdict = report.verdict && c.passed;
}

}  // namespace

const ConditionCheck* ConditionReport::find(const std::string& name) const {
  for (const ConditionCheck& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ScalarAsymptotics sample_scalar_asymptotics(
    const ScalarSource& src, const RayLadder& ladder, const VolumeRule& rule,
    std::optional<Orientation> solution) {
  check_ladder(ladder, src.support(), "sample_scalar_asymptotics");
  ScalarAsymptotics out;
  out.radii = ladder.radii;
  const Orientation sol = solution.value_or(ladder.direction.orientation());
  const FourVectorContra k_up = ladder.direction.k_contra();
  for (std::size_t i = 0; i < ladder.radii.size(); ++i) {
    const Event ev = ladder.event_at(i);
    const FieldSample s = scalar_sample(src, ev, sol, rule);
    const PsiExtraction p = extract_psi(s.gradient, ladder.direction);
    out.phi.push_back(s.value);
    out.psi_hat.push_back(p.psi);
    out.residual_norm.push_back(p.residual.euclidean_norm());
    out.sommerfeld.push_back(ladder.radii[i] * contract(s.gradient, k_up));
  }
  return out;
}

EMAsymptotics sample_em_asymptotics(
    const CurrentSource& src, const RayLadder& ladder, const VolumeRule& rule,
    std::optional<Orientation> solution) {
  check_ladder(ladder, src.support(), "sample_em_asymptotics");
  EMAsymptotics out;
  out.radii = ladder.radii;
  const Orientation sol = solution.value_or(ladder.direction.orientation());
  const FourVectorCo k = ladder.direction.k_co();
  const FourVectorContra k_up = ladder.direction.k_contra();
  // Spatial part of k^sigma: the propagation direction (n for retarded,
  // -n for advanced); the plane-wave structure is transverse to it.
  const Vec3 m = ladder.direction.unit() * ladder.direction.spatial_sign();

  for (std::size_t i = 0; i < ladder.radii.size(); ++i) {
    const Event ev = ladder.event_at(i);
    const PotentialSample s = vector_potential(src, ev, sol, rule);
    const FourVectorCo b = extract_B(s.jacobian);
    // Three-vector amplitude: contravariant spatial components.
    const Vec3 b3{-b[1], -b[2], -b[3]};
    const Vec3 e = electric_field(s.field);
    const Vec3 h = magnetic_field(s.field);
    const Vec3 b_cross_m = b3.cross(m);

    out.potential.push_back(s.potential);
    out.b_hat.push_back(b);
    out.jacobian_residual.push_back(
        (s.jacobian - outer(b, k)).frobenius_norm());
    out.null_contraction.push_back(contract(b, k_up));
    out.wedge_residual.push_back((s.field - wedge(k, b)).frobenius_norm());
    out.electric_residual.push_back((e - b_cross_m.cross(m)).norm());
    out.magnetic_residual.push_back((h - b_cross_m).norm());
    out.b_minkowski2.push_back(minkowski_norm2(b));
    out.b_euclidean2.push_back(b.euclidean_norm() * b.euclidean_norm());
  }
  return out;
}

ConditionReport verify_scalar(const ScalarSource& src, const RayLadder& ladder,
                              const VolumeRule& rule,
                              const VerifyThresholds& thresholds,
                              std::optional<Orientation> solution) {
  const ScalarAsymptotics s =
      sample_scalar_asymptotics(src, ladder, rule, solution);

  ConditionReport report;
  report.direction = ladder.direction.unit();
  report.orientation = ladder.direction.orientation();
  report.u0 = ladder.u0;
  report.checks.push_back(exponent_check("phi_falloff", s.radii, s.phi,
                                         thresholds.potential_exponent));
  report.checks.push_back(exponent_check("psi_falloff", s.radii, s.psi_hat,
                                         thresholds.amplitude_exponent));
  report.checks.push_back(exponent_check("gradient_residual_falloff", s.radii,
                                         s.residual_norm,
                                         thresholds.residual_exponent));
  report.checks.push_back(exponent_check("sommerfeld_falloff", s.radii,
                                         s.sommerfeld,
                                         thresholds.sommerfeld_exponent));
  finalize(report);
  return report;
}

ConditionReport verify_em(const CurrentSource& src, const RayLadder& ladder,
                          const VolumeRule& rule,
                          const VerifyThresholds& thresholds,
                          std::optional<Orientation> solution) {
  const EMAsymptotics s = sample_em_asymptotics(src, ladder, rule, solution);

  ConditionReport report;
  report.direction = ladder.direction.unit();
  report.orientation = ladder.direction.orientation();
  report.u0 = ladder.u0;

  for (std::size_t mu = 0; mu < 4; ++mu) {
    std::vector<double> component;
    component.reserve(s.potential.size());
    for (const FourVectorContra& a : s.potential) component.push_back(a[mu]);
    report.checks.push_back(
        exponent_check("potential_falloff_A" + std::to_string(mu), s.radii,
                       component, thresholds.potential_exponent));
  }
  report.checks.push_back(exponent_check("jacobian_residual_falloff", s.radii,
                                         s.jacobian_residual,
                                         thresholds.residual_exponent));
  report.checks.push_back(exponent_check("null_contraction_falloff", s.radii,
                                         s.null_contraction,
                                         thresholds.residual_exponent));
  report.checks.push_back(exponent_check("wedge_residual_falloff", s.radii,
                                         s.wedge_residual,
                                         thresholds.residual_exponent));
  report.checks.push_back(exponent_check("electric_structure_falloff", s.radii,
                                         s.electric_residual,
                                         thresholds.residual_exponent));
  report.checks.push_back(exponent_check("magnetic_structure_falloff", s.radii,
                                         s.magnetic_residual,
                                         thresholds.residual_exponent));

  // Sign condition B_rho B^rho <= 0, tested per rung against a floor scaled
  // by the peak amplitude over the whole ladder.
  ConditionCheck sign;
  sign.name = "b_norm_sign";
  sign.threshold = thresholds.b_norm_floor;
  double peak = 0.0;
  for (double b2 : s.b_euclidean2) peak = std::max(peak, b2);
  if (peak < kAmplitudeFloor * kAmplitudeFloor) {
    sign.passed = true;
    sign.vacuous = true;
    sign.detail = "amplitude below floor at every rung; passes vacuously";
  } else {
    double worst = -1e300;
    for (double b2 : s.b_minkowski2) worst = std::max(worst, b2 / peak);
    sign.measured = worst;
    sign.passed = worst <= thresholds.b_norm_floor;
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "worst B.B / peak |B|^2 = %.3e over %zu rungs", worst,
                  s.radii.size());
    sign.detail = buf;
  }
  report.checks.push_back(sign);

  finalize(report);
  return report;
}

}  // namespace fieldcheck
