#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "kpwave/snapshot_io.hpp"

namespace fs = std::filesystem;
using kpwave::cli::dispatch;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("kpwave_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const auto path = dir / "run.cfg";
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("params for an incompressible material") {
  const auto r = call({"params", "--mu", "1", "--A", "0", "--D", "0", "--nu0", "1"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "beta3 = 1.5\n"));
  CHECK(has(r.out, "branch = plus\n"));
  CHECK(has(r.out, "c_t = 1\n"));
}

TEST_CASE("params for a compressible material") {
  const auto r = call({"params", "--lambda", "-1", "--mu", "1", "--rho0", "1", "--alpha2", "1",
                       "--gamma1", "1", "--gamma2", "1", "--nu0", "0.5"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "beta = 1\n"));
  CHECK(has(r.out, "branch = minus\n"));
  CHECK(has(r.out, "s_t = -0.5\n"));

  const auto w = call({"params", "--mu", "1", "--A", "1", "--nu", "1", "--length", "1"});
  CHECK(w.code == 0);
  CHECK(has(w.err, "epsilon"));
}

TEST_CASE("soliton speed and samples") {
  const auto r = call({"soliton", "--equation", "quad"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "speed = 4\n"));

  const auto s = call({"soliton", "--equation", "cubic", "--t", "0", "--xmin", "-1", "--xmax", "1",
                       "--n", "3"});
  CHECK(s.code == 0);
  CHECK(has(s.out, "speed = 1\n"));
  CHECK(has(s.out, "x,value\n"));
  CHECK(has(s.out, "\n0,1\n"));
}

TEST_CASE("shock distance") {
  const auto dir = scratch("shock");
  {
    std::ofstream f(dir / "sine.txt");
    f.precision(17);
    f << "# one period of sin\n";
    for (int i = 0; i < 1024; ++i) f << std::sin(2 * 3.14159265358979323846 * i / 1024.0) << (i % 8 == 7 ? '\n' : ',');
    std::ofstream flat(dir / "flat.txt");
    for (int i = 0; i < 32; ++i) flat << "0.5\n";
    std::ofstream(dir / "bad.txt") << "1 x 1\n";
  }
  const auto r = call({"shock", "--equation", "quad", "--coeff", "0.3333333333333333", "--profile",
                       (dir / "sine.txt").string()});
  CHECK(r.code == 0);
  REQUIRE(has(r.out, "shock distance = "));
  CHECK(std::stod(r.out.substr(r.out.find('=') + 1)) == doctest::Approx(1.0).epsilon(1e-6));

  const auto flat = call({"shock", "--equation", "quad", "--coeff", "1", "--profile",
                          (dir / "flat.txt").string()});
  CHECK(flat.code == 0);
  CHECK(has(flat.out, "no shock"));

  const auto bad = call({"shock", "--equation", "quad", "--coeff", "1", "--profile",
                         (dir / "bad.txt").string()});
  CHECK(bad.code == 2);
  CHECK(has(bad.err, "line 1"));
  fs::remove_all(dir);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"soliton"}).code == 2);
  CHECK(call({"soliton", "--equation", "quartic"}).code == 2);
  CHECK(call({"soliton", "--equation", "quad", "--kappa", "-1"}).code == 2);
  CHECK(call({"params", "--mu", "1"}).code == 2);
  CHECK(call({"solve", "--config", "/nonexistent.cfg"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("solve writes snapshots and diagnostics") {
  const auto dir = scratch("solve");
  const auto cfg = write_config(dir, R"(equation = cubic
[grid]
nx = 32
ny = 16
xmin = -4pi
xmax = 4pi
ymin = -2pi
ymax = 2pi
[run]
dt = 0.01
t_end = 0.1
initial = soliton_cubic
snapshots = 0, 0.05, 0.1
diag_stride = 5
)");
  const auto r = call({"solve", "--config", cfg.string(), "--out", (dir / "out").string(),
                       "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "done: 10 steps"));
  for (const char* name : {"cubic-plus_t0.000000.csv", "cubic-plus_t0.050000.csv",
                           "cubic-plus_t0.100000.csv", "diagnostics.csv"}) {
    CHECK(fs::exists(dir / "out" / name));
  }
  const auto s = kpwave::read_snapshot((dir / "out" / "cubic-plus_t0.100000.csv").string());
  CHECK(s.field.geometry.nx == 32);
  CHECK(s.equation == "cubic-plus");
  CHECK(s.digest.size() == 64);

  const auto bad = write_config(dir, "equation = cubic\n[grid]\nnx = 3\n");
  const auto b = call({"solve", "--config", bad.string()});
  CHECK(b.code == 2);
  CHECK(has(b.err, "line 3"));
  fs::remove_all(dir);
}

TEST_CASE("solve reports blow-up with exit code 3") {
  const auto dir = scratch("blowup");
  const auto cfg = write_config(dir, R"(equation = cubic
[grid]
nx = 16
ny = 16
xmin = -pi
xmax = pi
ymin = -pi
ymax = pi
[run]
dt = 1
t_end = 1000
initial = line_soliton
kappa = 4
)");
  const auto r = call({"solve", "--config", cfg.string(), "--out", dir.string()});
  CHECK(r.code == 3);
  CHECK(has(r.err, "instability"));
  bool found = false;
  for (const auto& e : fs::directory_iterator(dir)) {
    found = found || e.path().filename().string().rfind("last_finite_", 0) == 0;
  }
  CHECK(found);
  fs::remove_all(dir);
}
