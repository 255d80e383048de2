#pragma once

// Scenario files: a single JSON document (schema key "fieldcheck/1")
// naming the theory, the source, the ray ladder, quadrature orders, and
// optional flux/charge sampling grids. Parsing failures throw ConfigError
// with the dotted path of the offending key.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fieldcheck/asymptotics.hpp"
#include "fieldcheck/minkowski.hpp"
#include "fieldcheck/quadrature.hpp"
#include "fieldcheck/sources.hpp"

namespace fieldcheck {

enum class Theory { kScalar, kMaxwell };

inline const char* to_string(Theory t) {
  return t == Theory::kScalar ? "scalar" : "maxwell";
}

struct QuadratureSpec {
  int radial = 24;
  int polar = 24;
  int azimuthal = 48;
};

struct SphereSpec {
  int polar = 24;
  int azimuthal = 48;
};

struct LadderSpec {
  std::vector<Vec3> directions = {{0.0, 0.0, 1.0}};
  double r0 = 0.0;  // 0: use default_ladder_r0(a, omega)
  double growth = 1.4142135623730951;
  int rungs = 12;
  double u0 = 0.0;
  // Ladder family; defaults to the scenario orientation. Setting the
  // opposite one checks the solution against the other family's boundary
  // conditions.
  std::optional<Orientation> orientation;
};

struct FluxSpec {
  std::vector<double> radii;
  std::vector<double> u0;  // one flux evaluation per (radius, u0) pair
};

struct ChargeSpec {
  std::vector<double> radii;
  std::vector<double> times;
};

struct SampleSpec {
  // potential | gradient | field | stress | psi, sampled on the ladder.
  std::string what = "potential";
};

struct Scenario {
  std::string name;
  Theory theory = Theory::kScalar;
  Orientation orientation = Orientation::kRetarded;

  // Exactly one of these is set, matching the theory.
  std::shared_ptr<const ScalarSource> scalar_source;
  std::shared_ptr<const CurrentSource> current_source;

  double source_radius = 0.0;  // support radius a
  double source_omega = 0.0;   // 0 for static sources
  bool omega_a_warning = false;

  LadderSpec ladder;
  QuadratureSpec quadrature;
  SphereSpec sphere;
  FluxSpec flux;
  ChargeSpec charge;
  SampleSpec sample;
  VerifyThresholds thresholds;

  Support support() const;
  VolumeRule make_volume_rule() const;
  SphereRule make_sphere_rule(double radius) const;
  RayLadder make_ladder(const Vec3& direction) const;
};

// Reads and parses a scenario file. Throws ConfigError on I/O failure,
// malformed JSON, or invalid/missing keys.
Scenario load_scenario(const std::string& path);

// Parses scenario JSON text; origin names the source in error messages.
Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin);

}  // namespace fieldcheck
