#pragma once

// Far-field verification machinery: sample solutions along a null ray at
// geometrically spaced radii, fit power-law falloffs, extract the radiation
// amplitudes, and check the large-r boundary conditions.
//
// Sampling is phase-locked: every rung of a ladder sits at t = u0 + r
// (retarded) or t = u0 - r (advanced), so an oscillating source contributes
// the same source-time phase at every radius and the fits see the pure
// radial decay instead of the pulse envelope.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fieldcheck/minkowski.hpp"
#include "fieldcheck/quadrature.hpp"
#include "fieldcheck/solver.hpp"
#include "fieldcheck/sources.hpp"

namespace fieldcheck {

struct RayLadder {
  NullDirection direction;
  double u0 = 0.0;
  std::vector<double> radii;

  // Rung event: position r_i * n, time u0 + r_i (retarded) or u0 - r_i
  // (advanced).
  Event event_at(std::size_t i) const;
};

// Geometric ladder r_i = r0 * growth^i, i = 0..rungs-1. growth must
// exceed 1 and r0 must be positive.
RayLadder make_ray_ladder(const NullDirection& direction, double u0, double r0,
                          double growth = 1.4142135623730951, int rungs = 12);

// Default innermost radius: 20 a max(1, 1/omega); pass omega = 0 for static
// sources.
double default_ladder_r0(double a, double omega);

struct FalloffFit {
  double exponent = 0.0;      // k in |v| ~ M r^-k
  double amplitude = 0.0;     // M
  double max_residual = 0.0;  // worst log-space fit error
  int used = 0;               // samples above the magnitude floor
};

constexpr double kAmplitudeFloor = 1e-14;

// Least-squares fit of log|value| against log r. Values with magnitude
// below kAmplitudeFloor are dropped; fewer than 4 surviving samples raise
// InsufficientDataError.
FalloffFit fit_falloff(std::span<const double> radii,
                       std::span<const double> values);

struct PsiExtraction {
  double psi = 0.0;
  FourVectorCo residual;
};

// Least-squares projection of the gradient onto the null direction:
// psi = sum_nu grad_nu k_nu / sum_nu k_nu k_nu with plain Euclidean sums
// over the covariant components (the Minkowski norm of k vanishes, so the
// metric cannot normalize this projection).
PsiExtraction extract_psi(const FourVectorCo& grad, const NullDirection& dir);

// Radiation amplitude of a potential jacobian: B_rho = A_{rho,0}, the time
// column, since the covariant k has time component 1 in both orientations.
FourVectorCo extract_B(const Tensor2& jac);

struct ScalarAsymptotics {
  std::vector<double> radii;
  std::vector<double> phi;
  std::vector<double> psi_hat;
  std::vector<double> residual_norm;  // ||phi_{,nu} - psi k_nu|| (Euclidean)
  std::vector<double> sommerfeld;     // r k^nu phi_{,nu}
};

struct EMAsymptotics {
  std::vector<double> radii;
  std::vector<FourVectorContra> potential;  // A^mu
  std::vector<FourVectorCo> b_hat;
  std::vector<double> jacobian_residual;  // ||A_{rho,sigma} - B_rho k_sigma||
  std::vector<double> null_contraction;   // B_rho k^rho
  std::vector<double> wedge_residual;     // ||f - (k_mu B_nu - k_nu B_mu)||
  std::vector<double> electric_residual;  // ||E - (B x n) x n||
  std::vector<double> magnetic_residual;  // ||H - B x n||
  std::vector<double> b_minkowski2;       // B_rho B^rho
  std::vector<double> b_euclidean2;       // component sum of squares
};

// The sampled solution's orientation defaults to the ladder's own; passing
// the opposite one deliberately tests a solution against the other family's
// boundary conditions (the discrimination experiment).
ScalarAsymptotics sample_scalar_asymptotics(
    const ScalarSource& src, const RayLadder& ladder, const VolumeRule& rule,
    std::optional<Orientation> solution = std::nullopt);

EMAsymptotics sample_em_asymptotics(
    const CurrentSource& src, const RayLadder& ladder, const VolumeRule& rule,
    std::optional<Orientation> solution = std::nullopt);

struct ConditionCheck {
  std::string name;
  double measured = 0.0;   // fitted exponent (or worst ratio for sign checks)
  double threshold = 0.0;
  double amplitude = 0.0;     // fitted M (0 when vacuous or not a fit)
  double fit_residual = 0.0;  // worst log-space fit error
  bool passed = false;
  bool vacuous = false;    // series below the amplitude floor everywhere
  std::string detail;
};

struct ConditionReport {
  Vec3 direction;
  Orientation orientation = Orientation::kRetarded;
  double u0 = 0.0;
  std::vector<ConditionCheck> checks;
  bool verdict = false;  // conjunction of all checks

  const ConditionCheck* find(const std::string& name) const;
};

// Minimum fitted exponents for a pass. Residual-type series must decay one
// order faster than the amplitudes they correct.
struct VerifyThresholds {
  double potential_exponent = 0.9;
  double amplitude_exponent = 0.9;
  double residual_exponent = 1.85;
  double sommerfeld_exponent = 0.85;
  double b_norm_floor = 1e-12;  // relative to the peak Euclidean B^2
};

// Scalar boundary conditions along one ladder: phi = O(1/r); the gradient
// is psi k + O(1/r^2) with psi = O(1/r); the Sommerfeld quantity
// r k^nu phi_{,nu} tends to 0. A series that never rises above the
// amplitude floor passes vacuously (static fields, symmetry nodes).
ConditionReport verify_scalar(const ScalarSource& src, const RayLadder& ladder,
                              const VolumeRule& rule,
                              const VerifyThresholds& thresholds = {},
                              std::optional<Orientation> solution = std::nullopt);

// Electromagnetic analogues: A^mu = O(1/r); A_{rho,sigma} = B_rho k_sigma +
// O(1/r^2); B_rho k^rho = O(1/r^2); the field is asymptotically the plane
// wave k wedge B with E = (B x n) x n, H = B x n; and B_rho B^rho <= 0 at
// every rung.
ConditionReport verify_em(const CurrentSource& src, const RayLadder& ladder,
                          const VolumeRule& rule,
                          const VerifyThresholds& thresholds = {},
                          std::optional<Orientation> solution = std::nullopt);

}  // namespace fieldcheck
