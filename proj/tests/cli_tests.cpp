// End-to-end checks of the fieldcheck binary: exit codes, output formats,
// error channels, and byte-level determinism. Invoked with the binary path,
// the bundled scenario directory, and the test fixture directory.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef __unix__
#include <sys/wait.h>
#endif

namespace {

int failures = 0;

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      ++failures;                                                     \
      std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);     \
    }                                                                 \
  } while (0)

#define CHECK_CONTAINS(haystack, needle)                                   \
  do {                                                                     \
    const std::string h = (haystack);                                      \
    if (h.find(needle) == std::string::npos) {                             \
      ++failures;                                                          \
      std::printf("FAIL %s:%d: output lacks \"%s\"; got:\n%s\n", __FILE__, \
                  __LINE__, std::string(needle).c_str(), h.c_str());       \
    }                                                                      \
  } while (0)

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Proc {
  int code = -1;
  std::string out;
  std::string err;
};

Proc run(const std::string& cmd) {
  const std::string full = cmd + " >cli_stdout.tmp 2>cli_stderr.tmp";
  const int status = std::system(full.c_str());
  Proc p;
#ifdef __unix__
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -2;
#else
  p.code = status;
#endif
  p.out = slurp("cli_stdout.tmp");
  p.err = slurp("cli_stderr.tmp");
  return p;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::printf("usage: %s <fieldcheck-binary> <scenario-dir> <fixture-dir>\n",
                argv[0]);
    return 2;
  }
  const std::string bin = std::string("\"") + argv[1] + "\"";
  const std::string scenarios = argv[2];
  const std::string fixtures = argv[3];

  // Passing verification: exit 0, JSON verdict on stdout.
  {
    Proc p = run(bin + " verify --scenario " + scenarios +
                 "/oscillating-monopole.json");
    CHECK(p.code == 0);
    CHECK_CONTAINS(p.out, "\"schema\": \"fieldcheck/report/1\"");
    CHECK_CONTAINS(p.out, "\"verdict\": \"pass\"");
    CHECK(p.err.empty());
  }

  // Orientation mismatch: exit 1 and the failing condition is named.
  {
    Proc p = run(bin + " verify --scenario " + scenarios +
                 "/monopole-mismatch.json");
    CHECK(p.code == 1);
    CHECK_CONTAINS(p.out, "\"verdict\": \"fail\"");
    CHECK_CONTAINS(p.out, "\"passed\": false");
    CHECK_CONTAINS(p.out, "\"ladder_orientation\": \"advanced\"");
  }

  // The advanced solution passes its own ladder.
  {
    Proc p = run(bin + " verify --scenario " + scenarios +
                 "/advanced-monopole.json");
    CHECK(p.code == 0);
    CHECK_CONTAINS(p.out, "\"orientation\": \"advanced\"");
    CHECK_CONTAINS(p.out, "\"verdict\": \"pass\"");
  }

  // Missing file and malformed scenarios go to stderr with exit 2.
  {
    Proc p = run(bin + " verify --scenario no_such_file.json");
    CHECK(p.code == 2);
    CHECK_CONTAINS(p.err, "config error");
  }
  {
    write_file("cli_bad_scenario.json",
               R"({"schema": "fieldcheck/1", "theory": "scalar",
                   "source": {"kind": "oscillating_monopole",
                              "q0": 1.0, "a": 0.1}})");
    Proc p = run(bin + " verify --scenario cli_bad_scenario.json");
    CHECK(p.code == 2);
    CHECK_CONTAINS(p.err, "source.omega");
  }

  // Radiation-amplitude samples: csv by default, r and psi, 12 rungs.
  {
    write_file("cli_psi_scenario.json",
               R"({"schema": "fieldcheck/1", "theory": "scalar",
                   "source": {"kind": "oscillating_monopole", "q0": 1.0,
                              "omega": 0.3, "a": 0.1},
                   "quadrature": {"radial": 8, "polar": 8, "azimuthal": 16}})");
    Proc p = run(bin + " sample --scenario cli_psi_scenario.json --what psi");
    CHECK(p.code == 0);
    CHECK(p.out.substr(0, 6) == "r,psi\n");
    CHECK(count_lines(p.out) == 13);
  }

  // Sampling derivatives inside the support is a numerical-domain error.
  {
    write_file("cli_inside_scenario.json",
               R"({"schema": "fieldcheck/1", "theory": "scalar",
                   "source": {"kind": "oscillating_monopole", "q0": 1.0,
                              "omega": 0.3, "a": 0.1},
                   "ladder": {"r0": 0.05},
                   "quadrature": {"radial": 8, "polar": 8, "azimuthal": 16}})");
    Proc p = run(bin +
                 " sample --scenario cli_inside_scenario.json --what gradient");
    CHECK(p.code == 3);
    CHECK_CONTAINS(p.err, "error:");
    CHECK_CONTAINS(p.err, "support");
  }

  // Flux table: one exact and one asymptotic row per grid point.
  {
    Proc p = run(bin + " flux --scenario " + scenarios +
                 "/static-monopole.json --format csv");
    CHECK(p.code == 0);
    CHECK(p.out.substr(0, 33) == "radius,u0,method,W0,W1,W2,W3\n50,0" ||
          p.out.substr(0, 29) == "radius,u0,method,W0,W1,W2,W3\n");
    CHECK(count_lines(p.out) == 5);
    CHECK_CONTAINS(p.out, "exact-integrand");
    CHECK_CONTAINS(p.out, "asymptotic-amplitude");
  }

  // Gauss charge table.
  {
    Proc p = run(bin + " charge --scenario " + scenarios +
                 "/static-charge.json --format csv");
    CHECK(p.code == 0);
    CHECK(p.out.substr(0, 14) == "radius,time,e\n");
    CHECK(count_lines(p.out) == 3);
    CHECK_CONTAINS(p.out, "\n5,0,1.99999");
    CHECK_CONTAINS(p.out, "\n10,0,1.99999");
  }

  // Convergence: resolved scenario converges, coarse orders do not.
  {
    Proc p = run(bin + " convergence --scenario " + scenarios +
                 "/static-monopole.json");
    CHECK(p.code == 0);
    CHECK_CONTAINS(p.out, "\"converged\": true");
  }
  {
    Proc p = run(bin + " convergence --scenario " + fixtures +
                 "/convergence-coarse.json");
    CHECK(p.code == 1);
    CHECK_CONTAINS(p.out, "\"converged\": false");
    CHECK_CONTAINS(p.out, "omega*a >= 0.5");
  }

  // Reports are byte-identical across repeated runs and thread counts.
  {
    const std::string base = bin + " verify --scenario " + scenarios +
                             "/superposition.json --out ";
    CHECK(run(base + "cli_rep_a.json --threads 1").code == 0);
    CHECK(run(base + "cli_rep_b.json --threads 1").code == 0);
    CHECK(run(base + "cli_rep_c.json --threads 3").code == 0);
    const std::string a = slurp("cli_rep_a.json");
    CHECK(!a.empty());
    CHECK(a == slurp("cli_rep_b.json"));
    CHECK(a == slurp("cli_rep_c.json"));
  }

  // Environment fallback for the thread count.
  {
    Proc p = run("FIELDCHECK_THREADS=2 " + bin + " verify --scenario " +
                 scenarios + "/static-monopole.json --format text");
    CHECK(p.code == 0);
    CHECK_CONTAINS(p.out, "verdict: PASS");
  }

  // Reserved --seed flag is accepted and ignored.
  {
    Proc p = run(bin + " verify --scenario " + scenarios +
                 "/static-monopole.json --seed 42");
    CHECK(p.code == 0);
  }

  // Command-line misuse is exit 2.
  {
    CHECK(run(bin + " verify --bogus-flag").code == 2);
    CHECK(run(bin).code == 2);
    CHECK(run(bin + " verify --scenario " + scenarios +
              "/static-monopole.json --format yaml")
              .code == 2);
  }

  // Verify has no CSV payload.
  {
    Proc p = run(bin + " verify --scenario " + scenarios +
                 "/static-monopole.json --format csv");
    CHECK(p.code == 2);
    CHECK_CONTAINS(p.err, "no CSV output");
  }

  // Sample emits JSON when asked.
  {
    Proc p = run(bin + " sample --scenario cli_psi_scenario.json --what psi" +
                 " --format json");
    CHECK(p.code == 0);
    CHECK_CONTAINS(p.out, "\"command\": \"sample\"");
    CHECK_CONTAINS(p.out, "\"rows\"");
  }

  if (failures == 0) {
    std::printf("cli tests: all passed\n");
    return 0;
  }
  std::printf("cli tests: %d failure(s)\n", failures);
  return 1;
}
