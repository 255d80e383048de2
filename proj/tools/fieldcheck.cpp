#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fieldcheck/errors.hpp"
#include "fieldcheck/parallel.hpp"
#include "fieldcheck/runner.hpp"
#include "fieldcheck/scenario.hpp"

namespace {

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("FIELDCHECK_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void write_payload(const fieldcheck::RunResult& result,
                   const std::string& out_path, const std::string& format) {
  std::string payload;
  if (format == "json") {
    payload = result.report.dump(2) + "\n";
  } else if (format == "text") {
    payload = result.text;
  } else if (format == "csv") {
    if (result.csv.empty()) {
      throw fieldcheck::ConfigError(
          "this subcommand has no CSV output; use --format json or text");
    }
    payload = result.csv;
  } else {
    throw fieldcheck::ConfigError("unknown format '" + format +
                                  "' (expected json, csv, or text)");
  }

  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw fieldcheck::ConfigError("cannot write " + out_path);
  out << payload;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fieldcheck: build retarded/advanced solutions of the scalar wave "
      "equation and Maxwell's equations for compact sources and verify "
      "their large-radius behavior"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, format, what_override;
  int threads = 0;
  long seed = 0;

  CLI::App* verify = app.add_subcommand(
      "verify", "check the boundary conditions along the scenario ladders");
  CLI::App* sample =
      app.add_subcommand("sample", "tabulate solution values along ladders");
  CLI::App* flux = app.add_subcommand(
      "flux", "radiated energy-momentum through the scenario spheres");
  CLI::App* charge =
      app.add_subcommand("charge", "Gauss-law charge at the scenario radii");
  CLI::App* convergence = app.add_subcommand(
      "convergence", "re-run the primary observable at scaled quadrature "
                     "orders and report deltas");

  for (CLI::App* sub : {verify, sample, flux, charge, convergence}) {
    sub->add_option("--scenario", scenario_path, "scenario JSON file")
        ->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format,
                    "json | csv | text (default: csv for sample, else json)");
    sub->add_option("--threads", threads,
                    "worker threads (fallback: env FIELDCHECK_THREADS, then 1)");
    sub->add_option("--seed", seed, "reserved; accepted and ignored");
  }
  sample->add_option("--what", what_override,
                     "potential | gradient | field | stress | psi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    fieldcheck::set_thread_count(resolve_threads(threads));
    fieldcheck::Scenario scenario = fieldcheck::load_scenario(scenario_path);
    if (!what_override.empty()) scenario.sample.what = what_override;

    fieldcheck::RunResult result;
    if (verify->parsed()) {
      result = fieldcheck::run_verify(scenario);
    } else if (sample->parsed()) {
      result = fieldcheck::run_sample(scenario);
    } else if (flux->parsed()) {
      result = fieldcheck::run_flux(scenario);
    } else if (charge->parsed()) {
      result = fieldcheck::run_charge(scenario);
    } else {
      result = fieldcheck::run_convergence(scenario);
    }

    if (format.empty()) format = sample->parsed() ? "csv" : "json";
    write_payload(result, out_path, format);
    return result.exit_code;
  } catch (const fieldcheck::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fieldcheck::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
