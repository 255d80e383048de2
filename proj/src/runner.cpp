#include "fieldcheck/runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fieldcheck/errors.hpp"
#include "fieldcheck/solver.hpp"
#include "fieldcheck/stress_energy.hpp"

namespace fieldcheck {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json vec3_json(const Vec3& v) {
  return ordered_json::array({v.x, v.y, v.z});
}

ordered_json co_json(const FourVectorCo& v) {
  return ordered_json::array({v[0], v[1], v[2], v[3]});
}

ordered_json report_header(const Scenario& s, const char* command) {
  ordered_json doc;
  doc["schema"] = "fieldcheck/report/1";
  doc["command"] = command;
  doc["scenario"] = s.name;
  doc["theory"] = to_string(s.theory);
  doc["orientation"] = to_string(s.orientation);
  auto warnings = ordered_json::array();
  if (s.omega_a_warning) {
    warnings.push_back(
        "omega*a >= 0.5: far-field error terms scale as (omega*a)^2");
  }
  doc["warnings"] = warnings;
  return doc;
}

ordered_json condition_json(const ConditionReport& rep) {
  ordered_json doc;
  doc["direction"] = vec3_json(rep.direction);
  doc["ladder_orientation"] = to_string(rep.orientation);
  doc["u0"] = rep.u0;
  auto checks = ordered_json::array();
  for (const ConditionCheck& c : rep.checks) {
    ordered_json j;
    j["name"] = c.name;
    j["measured"] = c.measured;
    j["threshold"] = c.threshold;
    j["amplitude"] = c.amplitude;
    j["fit_residual"] = c.fit_residual;
    j["passed"] = c.passed;
    j["vacuous"] = c.vacuous;
    j["detail"] = c.detail;
    checks.push_back(j);
  }
  doc["checks"] = checks;
  doc["verdict"] = rep.verdict ? "pass" : "fail";
  return doc;
}

ordered_json flux_json(const FluxVector& f, double u0) {
  ordered_json doc;
  doc["radius"] = f.radius;
  doc["u0"] = u0;
  doc["method"] = f.method == FluxVector::Method::kExactIntegrand
                      ? "exact-integrand"
                      : "asymptotic-amplitude";
  doc["W"] = co_json(f.W);
  return doc;
}

void text_conditions(std::ostringstream& os, const ConditionReport& rep) {
  os << "direction (" << rep.direction.x << ", " << rep.direction.y << ", "
     << rep.direction.z << "), u0 = " << rep.u0 << ": "
     << (rep.verdict ? "PASS" : "FAIL") << "\n";
  for (const ConditionCheck& c : rep.checks) {
    char line[160];
    if (c.vacuous) {
      std::snprintf(line, sizeof(line), "  %-4s %-28s %s\n",
                    c.passed ? "pass" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
    } else {
      std::snprintf(line, sizeof(line), "  %-4s %-28s %10.4f >= %-6.3g %s\n",
                    c.passed ? "pass" : "FAIL", c.name.c_str(), c.measured,
                    c.threshold, c.detail.c_str());
    }
    os << line;
  }
}

std::vector<std::pair<double, double>> flux_grid(const FluxSpec& spec) {
  std::vector<std::pair<double, double>> grid;
  for (double u0 : spec.u0)
    for (double r : spec.radii) grid.emplace_back(u0, r);
  return grid;
}

ordered_json run_fluxes(const Scenario& s, const VolumeRule& rule,
                        std::string* csv) {
  auto fluxes = ordered_json::array();
  if (csv) *csv = "radius,u0,method,W0,W1,W2,W3\n";
  for (const auto& [u0, r] : flux_grid(s.flux)) {
    const SphereRule sph = s.make_sphere_rule(r);
    FluxVector exact, asym;
    if (s.theory == Theory::kScalar) {
      exact = scalar_flux(*s.scalar_source, s.orientation, u0, sph, rule);
      asym = scalar_flux_asymptotic(*s.scalar_source, s.orientation, u0, sph,
                                    rule);
    } else {
      exact = em_flux(*s.current_source, s.orientation, u0, sph, rule);
      asym = em_flux_asymptotic(*s.current_source, s.orientation, u0, sph,
                                rule);
    }
    fluxes.push_back(flux_json(exact, u0));
    fluxes.push_back(flux_json(asym, u0));
    if (csv) {
      for (const FluxVector* f : {&exact, &asym}) {
        *csv += num(f->radius) + "," + num(u0) + "," +
                (f->method == FluxVector::Method::kExactIntegrand
                     ? "exact-integrand"
                     : "asymptotic-amplitude");
        for (std::size_t mu = 0; mu < 4; ++mu) *csv += "," + num(f->W[mu]);
        *csv += "\n";
      }
    }
  }
  return fluxes;
}

ordered_json run_charges(const Scenario& s, const VolumeRule& rule,
                         std::string* csv) {
  auto charges = ordered_json::array();
  if (csv) *csv = "radius,time,e\n";
  for (double t : s.charge.times) {
    for (double r : s.charge.radii) {
      const double e =
          gauss_charge(*s.current_source, r, t, s.make_sphere_rule(r), rule);
      ordered_json j;
      j["radius"] = r;
      j["time"] = t;
      j["e"] = e;
      charges.push_back(j);
      if (csv) *csv += num(r) + "," + num(t) + "," + num(e) + "\n";
    }
  }
  return charges;
}

}  // namespace

RunResult run_verify(const Scenario& s) {
  const VolumeRule rule = s.make_volume_rule();
  ordered_json doc = report_header(s, "verify");
  std::ostringstream text;
  text << "scenario " << s.name << " (" << to_string(s.theory) << ", "
       << to_string(s.orientation) << ")\n";

  bool all_pass = true;
  auto conditions = ordered_json::array();
  for (const Vec3& dir : s.ladder.directions) {
    const RayLadder ladder = s.make_ladder(dir);
    const ConditionReport rep =
        s.theory == Theory::kScalar
            ? verify_scalar(*s.scalar_source, ladder, rule, s.thresholds,
                            s.orientation)
            : verify_em(*s.current_source, ladder, rule, s.thresholds,
                        s.orientation);
    conditions.push_back(condition_json(rep));
    text_conditions(text, rep);
    all_pass = all_pass && rep.verdict;
  }
  doc["conditions"] = conditions;

  if (!s.flux.radii.empty()) doc["fluxes"] = run_fluxes(s, rule, nullptr);
  if (s.theory == Theory::kMaxwell && !s.charge.radii.empty())
    doc["gauss_charges"] = run_charges(s, rule, nullptr);

  doc["verdict"] = all_pass ? "pass" : "fail";
  text << "verdict: " << (all_pass ? "PASS" : "FAIL") << "\n";

  RunResult out;
  out.exit_code = all_pass ? 0 : 1;
  out.report = doc;
  out.text = text.str();
  return out;
}

RunResult run_sample(const Scenario& s) {
  const VolumeRule rule = s.make_volume_rule();
  const std::string& what = s.sample.what;
  const bool scalar = s.theory == Theory::kScalar;

  std::string header = "t,x,y,z,r";
  if (what == "potential") {
    header += scalar ? ",phi" : ",A0,A1,A2,A3";
  } else if (what == "gradient" || (what == "field" && scalar)) {
    header += scalar ? ",d0,d1,d2,d3"
                     : ",j00,j01,j02,j03,j10,j11,j12,j13,j20,j21,j22,j23,j30,"
                       "j31,j32,j33";
  } else if (what == "field") {
    header += ",Ex,Ey,Ez,Hx,Hy,Hz,lorenz";
  } else if (what == "stress") {
    header += scalar ? ",L" : "";
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        header += ",T" + std::to_string(mu) + std::to_string(nu);
  } else if (what == "psi") {
    header = scalar ? "r,psi" : "r,B0,B1,B2,B3";
  } else {
    throw ConfigError("key sample.what: unknown value '" + what + "'");
  }

  std::string csv = header + "\n";
  auto rows = ordered_json::array();
  for (const Vec3& dir : s.ladder.directions) {
    const RayLadder ladder = s.make_ladder(dir);
    for (std::size_t i = 0; i < ladder.radii.size(); ++i) {
      const Event ev = ladder.event_at(i);
      std::vector<double> cells;
      if (what != "psi") {
        cells = {ev.t, ev.pos.x, ev.pos.y, ev.pos.z, ladder.radii[i]};
      }

      if (what == "potential") {
        if (scalar) {
          cells.push_back(
              scalar_potential(*s.scalar_source, ev, s.orientation, rule));
        } else {
          const FourVectorContra a = vector_potential_value(
              *s.current_source, ev, s.orientation, rule);
          for (std::size_t mu = 0; mu < 4; ++mu) cells.push_back(a[mu]);
        }
      } else if (what == "gradient" || (what == "field" && scalar)) {
        if (scalar) {
          const FourVectorCo g =
              scalar_gradient(*s.scalar_source, ev, s.orientation, rule);
          for (std::size_t mu = 0; mu < 4; ++mu) cells.push_back(g[mu]);
        } else {
          const PotentialSample p =
              vector_potential(*s.current_source, ev, s.orientation, rule);
          for (std::size_t mu = 0; mu < 4; ++mu)
            for (std::size_t nu = 0; nu < 4; ++nu)
              cells.push_back(p.jacobian(mu, nu));
        }
      } else if (what == "field") {
        const PotentialSample p =
            vector_potential(*s.current_source, ev, s.orientation, rule);
        const Vec3 e = electric_field(p.field);
        const Vec3 h = magnetic_field(p.field);
        for (const Vec3* v : {&e, &h}) {
          cells.push_back(v->x);
          cells.push_back(v->y);
          cells.push_back(v->z);
        }
        cells.push_back(p.lorenz);
      } else if (what == "stress") {
        StressTensor t;
        if (scalar) {
          t = scalar_stress(
              scalar_gradient(*s.scalar_source, ev, s.orientation, rule));
          cells.push_back(t.lagrangian);
        } else {
          t = em_stress(
              vector_potential(*s.current_source, ev, s.orientation, rule)
                  .field);
        }
        for (std::size_t mu = 0; mu < 4; ++mu)
          for (std::size_t nu = 0; nu < 4; ++nu)
            cells.push_back(t.components(mu, nu));
      } else {  // psi
        cells.push_back(ladder.radii[i]);
        if (scalar) {
          const FourVectorCo g =
              scalar_gradient(*s.scalar_source, ev, s.orientation, rule);
          cells.push_back(extract_psi(g, ladder.direction).psi);
        } else {
          const PotentialSample p =
              vector_potential(*s.current_source, ev, s.orientation, rule);
          const FourVectorCo b = extract_B(p.jacobian);
          for (std::size_t mu = 0; mu < 4; ++mu) cells.push_back(b[mu]);
        }
      }

      std::string line;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) line += ",";
        line += num(cells[c]);
      }
      csv += line + "\n";
      rows.push_back(cells);
    }
  }

  ordered_json doc = report_header(s, "sample");
  doc["what"] = what;
  doc["columns"] = header;
  doc["rows"] = rows;

  RunResult out;
  out.report = doc;
  out.csv = csv;
  out.text = csv;
  return out;
}

RunResult run_flux(const Scenario& s) {
  if (s.flux.radii.empty())
    throw ConfigError("missing key flux (radii/u0 grid) for the flux command");
  const VolumeRule rule = s.make_volume_rule();
  ordered_json doc = report_header(s, "flux");
  std::string csv;
  doc["fluxes"] = run_fluxes(s, rule, &csv);

  RunResult out;
  out.report = doc;
  out.csv = csv;
  out.text = csv;
  return out;
}

RunResult run_charge(const Scenario& s) {
  if (s.theory != Theory::kMaxwell)
    throw ConfigError("the charge command requires theory maxwell");
  if (s.charge.radii.empty())
    throw ConfigError(
        "missing key charge (radii/times grid) for the charge command");
  const VolumeRule rule = s.make_volume_rule();
  ordered_json doc = report_header(s, "charge");
  std::string csv;
  doc["gauss_charges"] = run_charges(s, rule, &csv);

  RunResult out;
  out.report = doc;
  out.csv = csv;
  out.text = csv;
  return out;
}

RunResult run_convergence(const Scenario& s) {
  ordered_json doc = report_header(s, "convergence");
  const char* observable = "";
  std::vector<double> values;

  for (double factor : {1.0, 1.5, 2.0}) {
    const VolumeRule rule = s.make_volume_rule().scaled_orders(factor);
    if (!s.flux.radii.empty()) {
      observable = "flux_W0";
      const double u0 = s.flux.u0.front();
      const SphereRule sph =
          s.make_sphere_rule(s.flux.radii.front()).scaled_orders(factor);
      const FluxVector f =
          s.theory == Theory::kScalar
              ? scalar_flux(*s.scalar_source, s.orientation, u0, sph, rule)
              : em_flux(*s.current_source, s.orientation, u0, sph, rule);
      values.push_back(f.W[0]);
    } else {
      observable = "outermost_potential";
      const RayLadder ladder = s.make_ladder(s.ladder.directions.front());
      const Event ev = ladder.event_at(ladder.radii.size() - 1);
      if (s.theory == Theory::kScalar) {
        values.push_back(
            scalar_potential(*s.scalar_source, ev, s.orientation, rule));
      } else {
        values.push_back(vector_potential_value(*s.current_source, ev,
                                                s.orientation, rule)[0]);
      }
    }
  }

  const double d1 = std::abs(values[1] - values[0]);
  const double d2 = std::abs(values[2] - values[1]);
  const double floor = 1e-12 * std::max(1.0, std::abs(values[2]));
  const bool converged = d2 <= d1 / 2.0 || d2 <= floor;

  doc["observable"] = observable;
  doc["orders_factor"] = ordered_json::array({1.0, 1.5, 2.0});
  doc["values"] = values;
  doc["deltas"] = ordered_json::array({d1, d2});
  doc["floor"] = floor;
  doc["converged"] = converged;

  std::ostringstream text;
  text << "scenario " << s.name << " convergence of " << observable << "\n"
       << "  values: " << num(values[0]) << ", " << num(values[1]) << ", "
       << num(values[2]) << "\n"
       << "  deltas: " << num(d1) << " -> " << num(d2)
       << (converged ? " (converged)" : " (NOT CONVERGED)") << "\n";

  RunResult out;
  out.exit_code = converged ? 0 : 1;
  out.report = doc;
  out.text = text.str();
  return out;
}

}  // namespace fieldcheck
