#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hyptm_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& out, const std::string& env = "") {
  const std::string cmd = env + " \"" HYPTM_CLI_PATH "\" " + args + " --out \"" + out.string() + "\" > \"" +
                          (out / "stdout.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json report(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "report.json")); }

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("configuration errors exit with 2") {
    const fs::path d = scratch("config_errors");
    CHECK(run("verify local-bound --norm-sq 1.2", d) == 2);
    CHECK(run("probe --grid 512x1", d) == 2);
    CHECK(run("verify hardy --nonlinearity bogus", d) == 2);
    CHECK(run("maximize --t 1.5", d) == 2);
    CHECK(run("verify hardy --grid 12by4", d) == 2);
    CHECK(run("verify nothing", d) == 2);
    CHECK(run("", d) == 2);
    std::ofstream(d / "bad.toml") << "bogus-key = 1\n";
    CHECK(run("cover --config \"" + (d / "bad.toml").string() + "\"", d) == 2);
  }

  TEST_CASE("hitting the iteration limit exits with 3") {
    const fs::path d = scratch("max_iters");
    CHECK(run("maximize --max-iters 3", d) == 3);
    const nlohmann::json r = report(d);
    CHECK(r["exit_code"] == 3);
    CHECK(line_count(d / "trace.csv") >= 4);
    CHECK(fs::exists(d / "final_field.txt"));
  }

  TEST_CASE("a failing check exits with 1 and names the failure") {
    const fs::path d = scratch("gaps");
    CHECK(run("cover --lattice-step 4", d) == 1);
    const nlohmann::json r = report(d);
    CHECK(r["status"] == "fail");
    CHECK_FALSE(r["failures"].empty());
  }

  TEST_CASE("probe verdicts") {
    const fs::path full = scratch("probe_full");
    const fs::path half = scratch("probe_half");
    CHECK(run("probe --expect bounded", full) == 0);
    CHECK(run("probe --p-over-4pi 0.5 --expect bounded", half) == 0);
    std::ifstream a(full / "probe.csv"), b(half / "probe.csv");
    std::string la, lb;
    std::getline(a, la);
    std::getline(b, lb);
    std::size_t rows = 0;
    while (std::getline(a, la) && std::getline(b, lb)) {
      const double va = std::stod(la.substr(la.find(',') + 1));
      const double vb = std::stod(lb.substr(lb.find(',') + 1));
      CHECK(vb < va);
      ++rows;
    }
    CHECK(rows == 10);
  }

  TEST_CASE("a tiny region is covered by the origin") {
    const fs::path d = scratch("tiny");
    CHECK(run("cover --rho-max 0.3", d) == 0);
    CHECK(line_count(d / "centers.csv") == 2);
    CHECK(report(d)["convention"].is_string());
    CHECK(fs::exists(d / "metadata.json"));
  }

  TEST_CASE("config files set options") {
    const fs::path d = scratch("config");
    std::ofstream(d / "c.toml") << "rho-max = 0.3\n";
    CHECK(run("cover --config \"" + (d / "c.toml").string() + "\"", d) == 0);
    CHECK(line_count(d / "centers.csv") == 2);
  }

  TEST_CASE("the invariance suite reports trivial entries") {
    const fs::path d = scratch("invariance");
    CHECK(run("verify invariance", d) == 0);
    const nlohmann::json r = report(d);
    CHECK(r["summary"].contains("trivial_entries"));
    CHECK(fs::exists(d / "invariance.csv"));
  }

  TEST_CASE("reports do not depend on the thread count") {
    const fs::path a = scratch("threads_1");
    const fs::path b = scratch("threads_4");
    const fs::path c = scratch("threads_4_again");
    CHECK(run("cover", a, "HYPTM_THREADS=1") == 0);
    CHECK(run("cover", b, "HYPTM_THREADS=4") == 0);
    CHECK(run("cover", c, "HYPTM_THREADS=4") == 0);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(slurp(b / "report.json") == slurp(c / "report.json"));
    CHECK(slurp(a / "centers.csv") == slurp(b / "centers.csv"));

    const fs::path e = scratch("verify_threads_1");
    const fs::path f = scratch("verify_threads_3");
    CHECK(run("verify local-bound", e, "HYPTM_THREADS=1") == 0);
    CHECK(run("verify local-bound", f, "HYPTM_THREADS=3") == 0);
    CHECK(slurp(e / "report.json") == slurp(f / "report.json"));
    CHECK(slurp(e / "local-bound.csv") == slurp(f / "local-bound.csv"));
  }
}
