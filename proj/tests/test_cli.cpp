#include "doctest.h"
#include "oracles.hpp"

#include "cointreg/kernels.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

#ifndef COINTREG_CLI
#error "COINTREG_CLI must name the command-line binary"
#endif

namespace {

fs::path scratch(const std::string& name)
{
  const fs::path dir = fs::path(COINTREG_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& text)
{
  std::ofstream(p, std::ios::binary) << text;
}

struct Result {
  int code;
  std::string err;
};

Result run(const std::string& args, const fs::path& dir)
{
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(COINTREG_CLI) + " " + args + " > /dev/null 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr)
{
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header)
    *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      row.push_back(cell == "nan" ? NAN : std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

} // namespace

TEST_CASE("simulate writes n rows, metadata and a manifest, byte-identically")
{
  const auto dir = scratch("simulate");
  write(dir / "c.json", R"({"schema_version": 1, "n": 777, "seed": 5})");
  REQUIRE(run("simulate --config " + (dir / "c.json").string() + " --out " + (dir / "a").string(), dir).code == 0);
  REQUIRE(run("simulate --config " + (dir / "c.json").string() + " --out " + (dir / "b").string(), dir).code == 0);
  for (const char* f : {"path.csv", "path_meta.json", "manifest.json"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(dir / "a" / f));
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  std::string header;
  CHECK(read_csv(dir / "a" / "path.csv", &header).size() == 777);
  CHECK(header == "t,x,u,y");
  const auto meta = nlohmann::json::parse(slurp(dir / "a" / "path_meta.json"));
  CHECK(meta["norming"]["d_n"].get<double>() == doctest::Approx(std::sqrt(777.0 / 2)));
  CHECK(meta["phi_tail_mass"].get<double>() == 0.0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "a" / "manifest.json"));
  CHECK(manifest["seed"].get<int>() == 5);
  CHECK(manifest["config_hash"].get<std::string>().size() == 16);
  CHECK(manifest.contains("version"));

  REQUIRE(run("simulate --config " + (dir / "c.json").string() + " --out " + (dir / "s").string() + " --seed 6", dir)
            .code == 0);
  CHECK(slurp(dir / "a" / "path.csv") != slurp(dir / "s" / "path.csv"));
  CHECK(nlohmann::json::parse(slurp(dir / "s" / "manifest.json"))["seed"].get<int>() == 6);
}

TEST_CASE("invalid configs exit with code 2 and name the problem")
{
  const auto dir = scratch("invalid");
  write(dir / "alpha.json", R"({"schema_version": 1, "dgp": {"innovations": {"alpha": 2.5}}})");
  auto r = run("simulate --config " + (dir / "alpha.json").string() + " --out " + (dir / "o").string(), dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("alpha must lie in (0,2]") != std::string::npos);

  write(dir / "key.json", R"({"schema_version": 1, "bandwidth": {"rule": "fixed", "hh": 1}})");
  r = run("estimate --config " + (dir / "key.json").string() + " --out " + (dir / "o").string(), dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("bandwidth.hh") != std::string::npos);

  write(dir / "grid.json", R"({"schema_version": 1, "experiment": {"n_grid": [256, 256, 512]}})");
  r = run("rates --config " + (dir / "grid.json").string() + " --out " + (dir / "o").string(), dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("n_grid") != std::string::npos);

  write(dir / "none.json", R"({"n": 10})");
  CHECK(run("simulate --config " + (dir / "none.json").string() + " --out " + (dir / "o").string(), dir).code == 2);
  CHECK(run("simulate --config " + (dir / "missing.json").string() + " --out " + (dir / "o").string(), dir).code == 2);
  CHECK(run("simulate --config " + (dir / "alpha.json").string() + " --bogus", dir).code == 2);
}

TEST_CASE("numeric failures exit with code 3")
{
  const auto dir = scratch("numeric");
  write(dir / "zero.json", R"({"schema_version": 1,
    "dgp": {"disturbance": {"kind": "explicit", "coefficients": [0]}},
    "estimate": {"estimator": "NW"},
    "experiment": {"n_grid": [128, 256, 512], "reps": 1}})");
  const auto r = run("rates --config " + (dir / "zero.json").string() + " --out " + (dir / "o").string(), dir);
  CHECK(r.code == 3);
  CHECK(r.err.find("positive") != std::string::npos);
}

TEST_CASE("estimate on a noiseless constant regression")
{
  const auto dir = scratch("estimate");
  for (const char* est : {"NW", "LL"}) {
    write(dir / "c.json", std::string(R"({"schema_version": 1, "n": 2000, "seed": 3,
      "dgp": {"disturbance": {"kind": "explicit", "coefficients": [0]}, "m0": {"id": "constant", "a": 1.75}},
      "estimate": {"estimator": ")") + est + R"("}})");
    REQUIRE(run("estimate --config " + (dir / "c.json").string() + " --out " + (dir / est).string(), dir).code == 0);
    std::string header;
    const auto rows = read_csv(dir / est / "estimate.csv", &header);
    CHECK(header == "x,m_hat,denom,slope,degenerate");
    double worst = 0.0;
    std::size_t defined = 0;
    for (const auto& row : rows)
      if (row[4] == 0.0) {
        worst = std::max(worst, std::abs(row[1] - 1.75));
        ++defined;
      }
    CHECK(defined > 0);
    CHECK(worst <= 1e-10);
    for (const char* f : {"signal.csv", "domain_a.csv", "domain_r.csv", "estimate.json", "manifest.json"})
      CHECK(fs::exists(dir / est / f));
  }
}

TEST_CASE("estimate: domain nesting in eps and the denominator column")
{
  const auto dir = scratch("nesting");
  const auto config = [&](double eps) {
    return R"({"schema_version": 1, "n": 3000, "seed": 8, "estimate": {"eps": )" + std::to_string(eps) + "}}";
  };
  write(dir / "a.json", config(0.05));
  write(dir / "b.json", config(0.10));
  REQUIRE(run("estimate --config " + (dir / "a.json").string() + " --out " + (dir / "a").string(), dir).code == 0);
  REQUIRE(run("estimate --config " + (dir / "b.json").string() + " --out " + (dir / "b").string(), dir).code == 0);
  REQUIRE(run("simulate --config " + (dir / "a.json").string() + " --out " + (dir / "a").string(), dir).code == 0);
  const auto wide = read_csv(dir / "a" / "domain_a.csv");
  const auto narrow = read_csv(dir / "b" / "domain_a.csv");
  REQUIRE_FALSE(narrow.empty());
  for (const auto& iv : narrow) {
    const bool inside = std::any_of(wide.begin(), wide.end(),
                                    [&](const auto& w) { return w[0] <= iv[0] && iv[1] <= w[1]; });
    CHECK(inside);
  }

  // Psi_3 recomputed from the exported path.
  const auto path = read_csv(dir / "a" / "path.csv");
  const auto est = read_csv(dir / "a" / "estimate.csv");
  const auto k = cointreg::Kernel::epanechnikov();
  for (std::size_t i = 0; i < est.size(); i += 997) {
    double psi3 = 0.0;
    for (const auto& row : path)
      psi3 += oracle::kernel_h(k, 0.5, row[1] - est[i][0]);
    CHECK(est[i][2] == doctest::Approx(psi3).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("domains and orderest commands")
{
  const auto dir = scratch("domains");
  write(dir / "c.json", R"({"schema_version": 1, "n": 1000, "seed": 2,
    "experiment": {"n_grid": [128, 256, 512], "reps": 2, "slope_band": [-0.1, 0.25]}})");
  REQUIRE(run("domains --config " + (dir / "c.json").string() + " --out " + (dir / "d").string(), dir).code == 0);
  CHECK(fs::exists(dir / "d" / "domains.json"));
  CHECK(fs::exists(dir / "d" / "signal.csv"));
  REQUIRE(run("orderest --config " + (dir / "c.json").string() + " --out " + (dir / "o").string(), dir).code == 0);
  const auto s = nlohmann::json::parse(slurp(dir / "o" / "summary.json"));
  CHECK(s["covariance"].contains("slope"));
  CHECK(s["zero_energy"].contains("slope"));
  CHECK(s["rules"]["slope_band"].contains("covariance_pass"));
  std::string header;
  CHECK(read_csv(dir / "o" / "order.csv", &header).size() == 6);
}

TEST_CASE("rates: smoke run, thread invariance, summary")
{
  const auto dir = scratch("rates");
  write(dir / "c.json", R"({"schema_version": 1, "seed": 1,
    "dgp": {"m0": {"id": "sin"}, "disturbance": {"kind": "explicit", "coefficients": [1]}},
    "experiment": {"n_grid": [1024, 2048, 4096], "reps": 1, "slope_band": [-0.33, -0.14]}})");
  const auto start = std::chrono::steady_clock::now();
  REQUIRE(run("rates --config " + (dir / "c.json").string() + " --out " + (dir / "a").string(), dir).code == 0);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 10.0);
  REQUIRE(run("rates --threads 3 --config " + (dir / "c.json").string() + " --out " + (dir / "b").string(), dir)
            .code == 0);
  CHECK(slurp(dir / "a" / "rates.csv") == slurp(dir / "b" / "rates.csv"));
  CHECK(slurp(dir / "a" / "summary.json") == slurp(dir / "b" / "summary.json"));

  const auto s = nlohmann::json::parse(slurp(dir / "a" / "summary.json"));
  CHECK(s["predicted_exponent"].get<double>() == doctest::Approx(-0.25));
  CHECK(s["points"].size() == 3);
  CHECK(s["rules"]["slope_band"].contains("pass"));
  CHECK(s["rules"]["monotone_trend"].contains("pass"));

  // The summary slope is the log-log OLS of the per-n means in rates.csv.
  const auto rows = read_csv(dir / "a" / "rates.csv");
  std::vector<double> lx, ly;
  for (const auto& r : rows) {
    lx.push_back(std::log(r[0]));
    ly.push_back(std::log(r[4]));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  CHECK(s["slope"].get<double>() == doctest::Approx(sxy / sxx).epsilon(1e-12));
}
