#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("psigrad_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PSIGRAD_BIN) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("validate: classical case passes, missing weights is a usage error") {
  TempDir dir;
  CHECK(run_cli("--out " + dir.path.string() +
                " validate --alpha 1 --weights t --h 0.01") == 0);
  CHECK(fs::exists(dir.path / "validate.csv"));
  CHECK(fs::exists(dir.path / "validate.svg"));
  CHECK(fs::exists(dir.path / "manifest.json"));
  CHECK(run_cli("validate --alpha 1 --h 0.01") == 1);
}

TEST_CASE("validate: the four power weights pass the 1e-3 gate") {
  TempDir dir;
  CHECK(run_cli("--out " + dir.path.string() +
                " validate --alpha 0.5 --h 0.001 --weights t,t2,t3,t4") == 0);
  std::ifstream in(dir.path / "validate.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "t,numeric_t,exact_t,abs_err_t,numeric_t^2,exact_t^2,abs_err_t^2,"
        "numeric_t^3,exact_t^3,abs_err_t^3,numeric_t^4,exact_t^4,abs_err_t^4");
}

TEST_CASE("solve reproduces the validate numbers on the same problem") {
  TempDir dir;
  const auto cfg = dir.path / "cfg.json";
  std::ofstream(cfg) << R"({"kind":"caputo","alpha":0.5,
    "weight":{"family":"power","k":2.0,"l":0.0},
    "x0":[1.0],"rhs":{"type":"linear","lambda":-1.0},"h":0.01,"T":1.0})";
  CHECK(run_cli("--out " + dir.path.string() + " solve --config " + cfg.string()) == 0);
  CHECK(run_cli("--out " + dir.path.string() +
                " validate --alpha 0.5 --weights t2 --h 0.01") == 0);
  // final numeric value agrees across the two front ends (same solver path)
  auto last_line = [](const fs::path& p) {
    std::ifstream in(p);
    std::string line, last;
    while (std::getline(in, line)) {
      if (!line.empty()) last = line;
    }
    return last;
  };
  const std::string traj_last = last_line(dir.path / "trajectory.csv");
  const std::string val_last = last_line(dir.path / "validate.csv");
  const std::string x_solve = traj_last.substr(traj_last.find(',') + 1);
  std::string rest = val_last.substr(val_last.find(',') + 1);
  const std::string x_validate = rest.substr(0, rest.find(','));
  CHECK(x_solve == x_validate);
}

TEST_CASE("validate: unreachable threshold exits with the accuracy code") {
  TempDir dir;
  CHECK(run_cli("--out " + dir.path.string() +
                " validate --alpha 0.5 --weights t --h 0.01 --threshold 1e-12") == 2);
}

TEST_CASE("solve: zero rhs writes a constant trajectory") {
  TempDir dir;
  const auto cfg = dir.path / "cfg.json";
  std::ofstream(cfg) << R"({"kind":"caputo","alpha":0.5,
    "weight":{"family":"power","k":2.0,"l":0.0},
    "x0":[2.5],"rhs":{"type":"zero"},"h":0.1,"T":1.0})";
  CHECK(run_cli("--out " + dir.path.string() + " solve --config " + cfg.string()) == 0);
  const std::string csv = slurp(dir.path / "trajectory.csv");
  CHECK(csv.find("t,x_0\n") == 0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.find(',') + 1) == "2.500000000000e+00");
    ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("solve: malformed config is a usage error") {
  TempDir dir;
  const auto cfg = dir.path / "bad.json";
  std::ofstream(cfg) << "{ not json";
  CHECK(run_cli("solve --config " + cfg.string()) == 1);
  CHECK(run_cli("solve --config /nonexistent/cfg.json") == 1);
}

TEST_CASE("solve: identical configs give identical outputs") {
  TempDir dir1, dir2;
  const auto write_cfg = [](const fs::path& p) {
    std::ofstream(p) << R"({"kind":"caputo","alpha":0.5,
      "weight":{"family":"power","k":2.0,"l":0.0},
      "x0":[1.0],"rhs":{"type":"linear","lambda":-1.0},"h":0.01,"T":0.5})";
  };
  write_cfg(dir1.path / "cfg.json");
  write_cfg(dir2.path / "cfg.json");
  CHECK(run_cli("--out " + dir1.path.string() + " solve --config " +
                (dir1.path / "cfg.json").string()) == 0);
  CHECK(run_cli("--out " + dir2.path.string() + " solve --config " +
                (dir2.path / "cfg.json").string()) == 0);
  CHECK(slurp(dir1.path / "trajectory.csv") == slurp(dir2.path / "trajectory.csv"));
}

TEST_CASE("order: too few halvings is a usage error") {
  CHECK(run_cli("order --alpha 0.5 --weight t --h0 0.004 --halvings 1") == 1);
}

TEST_CASE("order: classical case measures second order") {
  TempDir dir;
  CHECK(run_cli("--out " + dir.path.string() +
                " order --alpha 1 --weight t --h0 0.01 --halvings 2") == 0);
  CHECK(fs::exists(dir.path / "order.csv"));
}

TEST_CASE("optimize: rk4-only sweep writes curves and summary") {
  TempDir dir;
  const auto cfg = dir.path / "sweep.json";
  std::ofstream(cfg) << R"({"objective":"booth","init":[10.0,5.0],
    "alphas":[],"weights":[],"include_rk4":true,"h":0.01,"T":2.0,"eps":0.1})";
  CHECK(run_cli("--out " + dir.path.string() + " optimize --config " + cfg.string()) == 0);
  CHECK(fs::exists(dir.path / "rk4.csv"));
  CHECK(fs::exists(dir.path / "summary.csv"));
  CHECK(fs::exists(dir.path / "distance.svg"));
  const std::string summary = slurp(dir.path / "summary.csv");
  CHECK(summary.find("label,time_to_eps,final_distance\n") == 0);
  CHECK(summary.find("rk4,") != std::string::npos);
}

TEST_CASE("optimize: fractional sweep emits one labeled curve per pair") {
  TempDir dir;
  const auto cfg = dir.path / "sweep.json";
  std::ofstream(cfg) << R"({"objective":{"name":"quadratic",
      "Q":[[1.0,0.0],[0.0,4.0]],"b":[0.0,0.0]},
    "init":[1.0,1.0],"alphas":[0.5,0.8],"weights":["t","t2"],
    "include_rk4":false,"h":0.01,"T":1.0,"eps":0.5})";
  CHECK(run_cli("--out " + dir.path.string() + " optimize --config " + cfg.string()) == 0);
  for (const char* label : {"abm_alpha0.5_t", "abm_alpha0.5_t^2", "abm_alpha0.8_t",
                            "abm_alpha0.8_t^2"}) {
    CHECK(fs::exists(dir.path / (std::string(label) + ".csv")));
  }
}

TEST_CASE("picard-compare: coarse smoke run agrees and reports") {
  TempDir dir;
  CHECK(run_cli("--out " + dir.path.string() +
                " picard-compare --m 8 --h 0.001 --T 1 --threshold 0.002") == 0);
  CHECK(fs::exists(dir.path / "picard_compare.csv"));
  CHECK(fs::exists(dir.path / "picard_compare.svg"));
}
