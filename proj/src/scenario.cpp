#include "fieldcheck/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fieldcheck/errors.hpp"
#include "json.hpp"

namespace fieldcheck {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require(const json& obj, const std::string& path,
                    const std::string& key) {
  if (!obj.is_object() || !obj.contains(key))
    throw ConfigError("missing key " + join(path, key));
  return obj.at(key);
}

double require_number(const json& obj, const std::string& path,
                      const std::string& key) {
  const json& v = require(obj, path, key);
  if (!v.is_number())
    throw ConfigError("key " + join(path, key) + " must be a number");
  return v.get<double>();
}

double require_positive(const json& obj, const std::string& path,
                        const std::string& key) {
  const double v = require_number(obj, path, key);
  if (!(v > 0.0))
    throw ConfigError("key " + join(path, key) + " must be positive");
  return v;
}

std::string require_string(const json& obj, const std::string& path,
                           const std::string& key) {
  const json& v = require(obj, path, key);
  if (!v.is_string())
    throw ConfigError("key " + join(path, key) + " must be a string");
  return v.get<std::string>();
}

double number_or(const json& obj, const std::string& path,
                 const std::string& key, double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return require_number(obj, path, key);
}

int int_or(const json& obj, const std::string& path, const std::string& key,
           int fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw ConfigError("key " + join(path, key) + " must be an integer");
  return v.get<int>();
}

Vec3 parse_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3)
    throw ConfigError("key " + where + " must be an array of 3 numbers");
  for (const auto& c : v)
    if (!c.is_number())
      throw ConfigError("key " + where + " must be an array of 3 numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Vec3 vec3_or(const json& obj, const std::string& path, const std::string& key,
             const Vec3& fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return parse_vec3(obj.at(key), join(path, key));
}

std::vector<double> parse_number_list(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty())
    throw ConfigError("key " + where + " must be a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& c : v) {
    if (!c.is_number())
      throw ConfigError("key " + where +
                        " must be a non-empty array of numbers");
    out.push_back(c.get<double>());
  }
  return out;
}

struct SourceInfo {
  std::shared_ptr<const ScalarSource> scalar;
  std::shared_ptr<const CurrentSource> current;
  double radius = 0.0;
  double omega = 0.0;
};

SourceInfo parse_source(const json& src, Theory theory,
                        const std::string& path);

SourceInfo parse_sum(const json& src, Theory theory, const std::string& path) {
  const json& parts = require(src, path, "parts");
  if (!parts.is_array() || parts.empty())
    throw ConfigError("key " + join(path, "parts") +
                      " must be a non-empty array");
  std::vector<std::shared_ptr<const ScalarSource>> scalars;
  std::vector<std::shared_ptr<const CurrentSource>> currents;
  double omega = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const SourceInfo part = parse_source(
        parts[i], theory, join(path, "parts[" + std::to_string(i) + "]"));
    omega = std::max(omega, part.omega);
    if (theory == Theory::kScalar)
      scalars.push_back(part.scalar);
    else
      currents.push_back(part.current);
  }
  SourceInfo info;
  info.omega = omega;
  if (theory == Theory::kScalar) {
    info.scalar = scalar_sum(std::move(scalars));
    info.radius = info.scalar->support().radius;
  } else {
    info.current = current_sum(std::move(currents));
    info.radius = info.current->support().radius;
  }
  return info;
}

SourceInfo parse_source(const json& src, Theory theory,
                        const std::string& path) {
  const std::string kind = require_string(src, path, "kind");
  const Vec3 center = vec3_or(src, path, "center", {});
  SourceInfo info;

  if (kind == "sum") return parse_sum(src, theory, path);

  if (kind == "static_monopole") {
    if (theory != Theory::kScalar)
      throw ConfigError("key " + join(path, "kind") + ": " + kind +
                        " requires theory scalar");
    const double q = require_number(src, path, "charge");
    const double a = require_positive(src, path, "a");
    info.scalar = static_monopole(q, a, center);
    info.radius = a;
    return info;
  }
  if (kind == "oscillating_monopole") {
    if (theory != Theory::kScalar)
      throw ConfigError("key " + join(path, "kind") + ": " + kind +
                        " requires theory scalar");
    const double q0 = require_number(src, path, "q0");
    const double omega = require_positive(src, path, "omega");
    const double a = require_positive(src, path, "a");
    info.scalar = oscillating_monopole(q0, omega, a, center);
    info.radius = a;
    info.omega = omega;
    return info;
  }
  if (kind == "static_charge") {
    if (theory != Theory::kMaxwell)
      throw ConfigError("key " + join(path, "kind") + ": " + kind +
                        " requires theory maxwell");
    const double e = require_number(src, path, "charge");
    const double a = require_positive(src, path, "a");
    info.current = static_charge(e, a, center);
    info.radius = a;
    return info;
  }
  if (kind == "hertzian_dipole") {
    if (theory != Theory::kMaxwell)
      throw ConfigError("key " + join(path, "kind") + ": " + kind +
                        " requires theory maxwell");
    const double p0 = require_number(src, path, "p0");
    const double omega = require_positive(src, path, "omega");
    const double a = require_positive(src, path, "a");
    const Vec3 axis = vec3_or(src, path, "axis", {0.0, 0.0, 1.0});
    info.current = hertzian_dipole(p0, omega, a, axis, center);
    info.radius = a;
    info.omega = omega;
    return info;
  }
  throw ConfigError("key " + join(path, "kind") + ": unknown source kind '" +
                    kind + "'");
}

}  // namespace

Support Scenario::support() const {
  return theory == Theory::kScalar ? scalar_source->support()
                                   : current_source->support();
}

VolumeRule Scenario::make_volume_rule() const {
  const Support sup = support();
  return VolumeRule(sup.center, sup.radius, quadrature.radial,
                    quadrature.polar, quadrature.azimuthal);
}

SphereRule Scenario::make_sphere_rule(double radius) const {
  return SphereRule(radius, sphere.polar, sphere.azimuthal);
}

RayLadder Scenario::make_ladder(const Vec3& direction) const {
  const double r0 = ladder.r0 > 0.0
                        ? ladder.r0
                        : default_ladder_r0(source_radius, source_omega);
  return make_ray_ladder(
      NullDirection(direction, ladder.orientation.value_or(orientation)),
      ladder.u0, r0, ladder.growth, ladder.rungs);
}

Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");

  const std::string schema = require_string(doc, "", "schema");
  if (schema != "fieldcheck/1")
    throw ConfigError("key schema: unsupported value '" + schema +
                      "' (expected fieldcheck/1)");

  Scenario s;
  s.name = doc.contains("name") ? require_string(doc, "", "name") : origin;

  const std::string theory = require_string(doc, "", "theory");
  if (theory == "scalar")
    s.theory = Theory::kScalar;
  else if (theory == "maxwell")
    s.theory = Theory::kMaxwell;
  else
    throw ConfigError("key theory: must be 'scalar' or 'maxwell'");

  const std::string orient =
      doc.contains("orientation") ? require_string(doc, "", "orientation")
                                  : "retarded";
  if (orient == "retarded")
    s.orientation = Orientation::kRetarded;
  else if (orient == "advanced")
    s.orientation = Orientation::kAdvanced;
  else
    throw ConfigError("key orientation: must be 'retarded' or 'advanced'");

  const SourceInfo info =
      parse_source(require(doc, "", "source"), s.theory, "source");
  s.scalar_source = info.scalar;
  s.current_source = info.current;
  s.source_radius = info.radius;
  s.source_omega = info.omega;
  s.omega_a_warning = info.omega * info.radius >= 0.5;

  if (doc.contains("ladder")) {
    const json& l = doc.at("ladder");
    if (l.contains("directions")) {
      const json& dirs = l.at("directions");
      if (!dirs.is_array() || dirs.empty())
        throw ConfigError("key ladder.directions must be a non-empty array");
      s.ladder.directions.clear();
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        s.ladder.directions.push_back(parse_vec3(
            dirs[i], "ladder.directions[" + std::to_string(i) + "]"));
      }
    }
    s.ladder.r0 = number_or(l, "ladder", "r0", 0.0);
    if (s.ladder.r0 < 0.0)
      throw ConfigError("key ladder.r0 must be positive");
    s.ladder.growth = number_or(l, "ladder", "growth", s.ladder.growth);
    if (!(s.ladder.growth > 1.0))
      throw ConfigError("key ladder.growth must exceed 1");
    s.ladder.rungs = int_or(l, "ladder", "rungs", s.ladder.rungs);
    if (s.ladder.rungs < 4)
      throw ConfigError("key ladder.rungs must be at least 4");
    s.ladder.u0 = number_or(l, "ladder", "u0", 0.0);
    if (l.contains("orientation")) {
      const std::string lor = require_string(l, "ladder", "orientation");
      if (lor == "retarded")
        s.ladder.orientation = Orientation::kRetarded;
      else if (lor == "advanced")
        s.ladder.orientation = Orientation::kAdvanced;
      else
        throw ConfigError(
            "key ladder.orientation: must be 'retarded' or 'advanced'");
    }
  }

  if (doc.contains("quadrature")) {
    const json& q = doc.at("quadrature");
    s.quadrature.radial = int_or(q, "quadrature", "radial", 24);
    s.quadrature.polar = int_or(q, "quadrature", "polar", 24);
    s.quadrature.azimuthal = int_or(q, "quadrature", "azimuthal", 48);
  }
  if (doc.contains("sphere")) {
    const json& q = doc.at("sphere");
    s.sphere.polar = int_or(q, "sphere", "polar", 24);
    s.sphere.azimuthal = int_or(q, "sphere", "azimuthal", 48);
  }

  if (doc.contains("flux")) {
    const json& f = doc.at("flux");
    s.flux.radii = parse_number_list(require(f, "flux", "radii"),
                                     "flux.radii");
    s.flux.u0 = parse_number_list(require(f, "flux", "u0"), "flux.u0");
  }
  if (doc.contains("charge")) {
    if (s.theory != Theory::kMaxwell)
      throw ConfigError("key charge requires theory maxwell");
    const json& c = doc.at("charge");
    s.charge.radii = parse_number_list(require(c, "charge", "radii"),
                                       "charge.radii");
    s.charge.times = parse_number_list(require(c, "charge", "times"),
                                       "charge.times");
  }
  if (doc.contains("sample")) {
    const json& sm = doc.at("sample");
    s.sample.what = sm.contains("what") ? require_string(sm, "sample", "what")
                                        : s.sample.what;
  }

  if (doc.contains("thresholds")) {
    const json& t = doc.at("thresholds");
    s.thresholds.potential_exponent = number_or(
        t, "thresholds", "potential_exponent", s.thresholds.potential_exponent);
    s.thresholds.amplitude_exponent = number_or(
        t, "thresholds", "amplitude_exponent", s.thresholds.amplitude_exponent);
    s.thresholds.residual_exponent = number_or(
        t, "thresholds", "residual_exponent", s.thresholds.residual_exponent);
    s.thresholds.sommerfeld_exponent =
        number_or(t, "thresholds", "sommerfeld_exponent",
                  s.thresholds.sommerfeld_exponent);
    s.thresholds.b_norm_floor =
        number_or(t, "thresholds", "b_norm_floor", s.thresholds.b_norm_floor);
  }

  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

}  // namespace fieldcheck
