#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rotwave/commands.hpp"
#include "rotwave/config.hpp"
#include "rotwave/errors.hpp"
#include "rotwave/outputs.hpp"

using namespace rotwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rotwave_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

struct CliResult {
  int code;
  std::string err;
};

CliResult cli(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(ROTWAVE_CLI) + " " + args + " >" + (dir / "stdout.txt").string() +
                          " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(err)};
}

const char* kSmall = R"([physics]
epsilon = 0.1
mu = 0.01
omega = 0.5
[grid]
n = 128
[time]
t_end = 1
dt = 0.02
dt_out = 0.5
)";

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("empty text gives defaults") { CHECK(parse_config("") == ExperimentConfig{}); }
  SUBCASE("values and comments") {
    const auto c = parse_config("# comment\n[physics]\nmu = 0.02  # trailing\nomega=1.5\n[experiment]\nmu_list = 1e-2, 1e-3\n");
    CHECK(c.params.mu == 0.02);
    CHECK(c.params.omega == 1.5);
    CHECK(c.mu_list == std::vector<double>{1e-2, 1e-3});
  }
  SUBCASE("theta converts to lambda") {
    const auto c = parse_config("[physics]\ntheta = 1\n");
    CHECK(c.params.lambda == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("range violation names key and line") {
    try {
      parse_config("[physics]\nepsilon = 0.1\nmu = -1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
      CHECK(std::string(e.what()).find("mu") != std::string::npos);
    }
  }
  SUBCASE("every error is reported") {
    try {
      parse_config("[physics]\nbogus = 1\nmu = abc\n[nowhere]\n[grid]\nn = 100\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string m = e.what();
      CHECK(e.line() == 2);
      CHECK(m.find("line 2") != std::string::npos);
      CHECK(m.find("line 3") != std::string::npos);
      CHECK(m.find("line 4") != std::string::npos);
      CHECK(m.find("line 6") != std::string::npos);
    }
  }
  SUBCASE("duplicate key") { CHECK_THROWS_AS(parse_config("[time]\ndt = 0.1\ndt = 0.2\n"), ConfigError); }
  SUBCASE("key outside a section") { CHECK_THROWS_AS(parse_config("mu = 0.1\n"), ConfigError); }
  SUBCASE("dt must not exceed dt_out") {
    CHECK_THROWS_AS(parse_config("[time]\ndt = 0.5\ndt_out = 0.1\n"), ConfigError);
  }
  SUBCASE("round trip") {
    ExperimentConfig c;
    c.params.epsilon = 0.123456789012345;
    c.params.mu = 1.0 / 3.0;
    c.params.omega = 0.7;
    c.params.lambda = -0.05;
    c.family = Family::surface_rch;
    c.surface_form = SurfaceForm::consistent;
    c.theta_convention = ThetaConvention::unscaled;
    c.grid = {1024, 80.0, Backend::fd4, false};
    c.initial.profile = "gaussian";
    c.initial.amplitude = 0.3;
    c.initial.rgn_start = RgnStart::eta_only;
    c.mu_list = {0.1, 0.01};
    c.out_dir = "results/run 1";
    CHECK(parse_config(emit_config(c)) == c);
    CHECK(parse_config(emit_config(ExperimentConfig{})) == ExperimentConfig{});
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), IoError); }
}

TEST_CASE("output writer") {
  SUBCASE("empty report") {
    const fs::path d = scratch("empty");
    const Manifest m = write_outputs(Report{}, d.string());
    REQUIRE(m.files.size() == 1);
    CHECK(m.files[0].file == "summary.json");
    CHECK(fs::exists(d / "manifest.json"));
  }
  SUBCASE("hashes match the files") {
    const fs::path d = scratch("hash");
    Report r;
    r.command = "t";
    r.tables.push_back({"a.csv", {"x", "y"}, {{1.0, 0.1}, {2.0, NAN}}});
    const Manifest m = write_outputs(r, d.string());
    for (const auto& e : m.files) {
      CHECK(e.sha256 == sha256_file((d / e.file).string()));
      CHECK(e.bytes == fs::file_size(d / e.file));
    }
    CHECK(slurp(d / "a.csv") == "x,y\n1,0.10000000000000001\n2,nan\n");
    const auto man = nlohmann::json::parse(slurp(d / "manifest.json"));
    CHECK(man["files"].size() == 2);
  }
  SUBCASE("known digest") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
  SUBCASE("unwritable directory") {
    CHECK_THROWS_AS(write_outputs(Report{}, "/proc/rotwave_cannot_write"), IoError);
  }
}

TEST_CASE("profiles") {
  InitialData d;
  d.amplitude = 2.0;
  d.width = 3.0;
  d.center = 1.0;
  CHECK(make_profile(d)(1.0) == doctest::Approx(2.0));
  d.profile = "gaussian";
  CHECK(make_profile(d)(4.0) == doctest::Approx(2.0 * std::exp(-1.0)));
  const fs::path dir = scratch("profile");
  spit(dir / "p.csv", "x,value\n-1,0\n0,2\n1,0\n");
  d.profile = "file";
  d.file = (dir / "p.csv").string();
  const auto f = make_profile(d);
  CHECK(f(0.5) == doctest::Approx(1.0));
  CHECK(f(5.0) == 0.0);
  d.file = (dir / "missing.csv").string();
  CHECK_THROWS_AS(make_profile(d), IoError);
  d.profile = "square";
  CHECK_THROWS_AS(make_profile(d), ConfigError);
}

TEST_CASE("command line") {
  const fs::path dir = scratch("cli");
  spit(dir / "small.cfg", kSmall);
  const std::string cfg = (dir / "small.cfg").string();

  SUBCASE("coefficients") {
    CHECK(cli("coeffs --omega 0", dir).code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "stdout.txt"));
    CHECK(j["beta_rch"].get<double>() == doctest::Approx(5.0 / 12.0));
    CHECK(j["constraints"]["all_ok"].get<bool>());
    CHECK(cli("coeffs --omega 0.3 --family gbbm --p -0.1 --theta 0.8", dir).code == 0);
    CHECK(cli("coeffs --omega 0.3 --family surface-rch --surface-form consistent", dir).code == 0);
  }
  SUBCASE("error codes") {
    auto r = cli("coeffs --omega -1", dir);
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.err)["error"] == "domain");
    CHECK(cli("coeffs", dir).code == 2);
    spit(dir / "bad.cfg", "[physics]\nmu = -1\n");
    r = cli("simulate-rch --config " + (dir / "bad.cfg").string(), dir);
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.err)["line"] == 2);
    CHECK(cli("simulate-rch --config " + (dir / "none.cfg").string(), dir).code == 4);
    CHECK(cli("simulate-rch --config " + cfg + " --out /proc/rotwave_x", dir).code == 4);
    spit(dir / "nonevolvable.cfg", "[physics]\nomega = 3\n");
    r = cli("simulate-rch --config " + (dir / "nonevolvable.cfg").string(), dir);
    CHECK(r.code == 3);
    CHECK(nlohmann::json::parse(r.err)["error"] == "numerical");
  }
  SUBCASE("subcommands write their outputs deterministically") {
    for (const char* sub : {"simulate-rch", "simulate-rgn", "reconstruct"}) {
      const fs::path a = dir / (std::string(sub) + "_a"), b = dir / (std::string(sub) + "_b");
      REQUIRE(cli(std::string(sub) + " --config " + cfg + " --out " + a.string(), dir).code == 0);
      REQUIRE(cli(std::string(sub) + " --config " + cfg + " --out " + b.string(), dir).code == 0);
      for (const auto& e : fs::directory_iterator(a))
        if (e.path().extension() == ".csv") CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
      CHECK(fs::exists(a / "summary.json"));
    }
    const auto s = nlohmann::json::parse(slurp(dir / "simulate-rgn_a" / "summary.json"));
    CHECK(s["results"]["termination"] == "completed");
    CHECK(s["version"] == kVersion);
    CHECK(s["config"]["physics"]["mu"] == 0.01);
    CHECK(slurp(dir / "simulate-rch_a" / "trajectory.csv").rfind("t,x,w\n", 0) == 0);
    CHECK(slurp(dir / "simulate-rgn_a" / "trajectory.csv").rfind("t,x,eta,u\n", 0) == 0);
  }
  SUBCASE("scans") {
    spit(dir / "scan.cfg", std::string(kSmall) + "[experiment]\nmu_list = 1e-2, 4e-3, 2e-3\nomega_list = 0.5\nprobe_times = 0.1\nt_fixed = 1\n");
    const std::string sc = (dir / "scan.cfg").string();
    CHECK(cli("consistency --config " + sc + " --out " + (dir / "cons").string() + " --jobs 2", dir).code == 0);
    CHECK(slurp(dir / "cons" / "residuals.csv").rfind("mu,epsilon,t,r1_norm,r2_norm,raw\n", 0) == 0);
    CHECK(cli("converge --config " + sc + " --out " + (dir / "conv").string(), dir).code == 0);
    const auto s = nlohmann::json::parse(slurp(dir / "conv" / "summary.json"));
    CHECK(s["results"]["fits"][0]["slope"].is_number());
    CHECK(slurp(dir / "conv" / "errors.csv").rfind("mu,epsilon,omega,t,err_u,err_eta,sup_err\n", 0) == 0);
  }
  SUBCASE("blow-up exits with a numerical error after writing outputs") {
    spit(dir / "dry.cfg",
         "[physics]\nepsilon = 0.1\nmu = 0.01\n[initial]\namplitude = -9.6\nrgn_start = eta-only\n[time]\nt_end = 1\n");
    const fs::path out = dir / "dry";
    const auto r = cli("simulate-rgn --config " + (dir / "dry.cfg").string() + " --out " + out.string(), dir);
    CHECK(r.code == 3);
    CHECK(nlohmann::json::parse(r.err)["termination"] == "initial_positivity");
    CHECK(fs::exists(out / "summary.json"));
  }
}
