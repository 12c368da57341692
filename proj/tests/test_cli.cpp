#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fmstab/config.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FMSTAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fmstab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& s) {
    std::ofstream f(p);
    f << s;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* kBbmbConfig = R"({
  "model": {
    "kind": "bbmb",
    "basis": {"kind": "sine_dirichlet_1d", "length": 1.0, "modes": 16},
    "f": {"form": "identity"},
    "h": {"type": "mode", "k": 1, "amplitude": 0.1}
  },
  "controller": {
    "variant": "track_state",
    "mu": 1.0,
    "n_modes": 2,
    "target": {"type": "trajectory", "initial_condition": {"type": "random_smooth", "amplitude": 0.01}}
  },
  "integrator": {"dt": 0.001, "t_end": 1.0, "record_every": 50, "scheme": "imex_cnab2"},
  "initial_condition": {"type": "random_smooth", "amplitude": 0.02},
  "seed": 7,
  "output_dir": "out"
})";

}  // namespace

TEST_CASE("certify exits 0 on a certifiable config and writes the certificate") {
    const fs::path dir = temp_dir("certify");
    write(dir / "cfg.json", kBbmbConfig);
    const int rc = run_cli("certify --config " + (dir / "cfg.json").string() + " --out " +
                           (dir / "out").string());
    CHECK(rc == 0);
    CHECK(fs::exists(dir / "out" / "certificate.json"));
}

TEST_CASE("certify exits 2 when the conditions fail (NDWave with mu < m0)") {
    const fs::path dir = temp_dir("certify2");
    const char* cfg = R"({
      "model": {
        "kind": "ndwave",
        "basis": {"kind": "sine_dirichlet_1d", "length": 1.0, "modes": 16},
        "f": {"form": "cubic_minus_linear", "m0": 3.0, "a": 3.0, "p": 2},
        "g": {"form": "linear", "a1": 1.0}
      },
      "controller": {"variant": "steady_state", "mu": 0.5, "n_modes": 4, "target": {"type": "zero"}},
      "integrator": {"dt": 0.001, "t_end": 1.0},
      "initial_condition": {"type": "single_mode", "k": 1, "amplitude": 0.1},
      "seed": 1
    })";
    write(dir / "cfg.json", cfg);
    const int rc = run_cli("certify --config " + (dir / "cfg.json").string() + " --out " +
                           (dir / "out").string());
    CHECK(rc == 2);
}

TEST_CASE("simulate writes run files; equal seeds give bit-identical CSV") {
    const fs::path dir = temp_dir("simulate");
    write(dir / "cfg.json", kBbmbConfig);
    const std::string base = "simulate --config " + (dir / "cfg.json").string();
    CHECK(run_cli(base + " --out " + (dir / "a").string() + " --seed 5") == 0);
    CHECK(run_cli(base + " --out " + (dir / "b").string() + " --seed 5") == 0);
    CHECK(fs::exists(dir / "a" / "run.csv"));
    CHECK(fs::exists(dir / "a" / "run.meta.json"));
    const std::string a = slurp(dir / "a" / "run.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(dir / "b" / "run.csv"));
    const std::string c = slurp(dir / "a" / "run.meta.json");
    CHECK(c.find("config_hash") != std::string::npos);
}

TEST_CASE("malformed config exits 1") {
    const fs::path dir = temp_dir("badcfg");
    write(dir / "cfg.json", "{\"model\": {\"kind\": \"bbmb\"}, \"unknown\": 1}");
    CHECK(run_cli("certify --config " + (dir / "cfg.json").string()) == 1);
    CHECK(run_cli("simulate --config " + (dir / "missing.json").string()) == 1);
}

TEST_CASE("numerical blow-up exits 3 and leaves a diagnostic") {
    const fs::path dir = temp_dir("blowup");
    const char* cfg = R"({
      "model": {
        "kind": "kdvb",
        "basis": {"kind": "periodic_zero_mean_1d", "length": 1.0, "modes": 16},
        "f": {"form": "identity"}
      },
      "integrator": {"dt": 0.05, "t_end": 5.0, "record_every": 1},
      "initial_condition": {"type": "random_smooth", "amplitude": 2000.0, "decay_exponent": 0.5},
      "seed": 3
    })";
    write(dir / "cfg.json", cfg);
    const int rc = run_cli("simulate --config " + (dir / "cfg.json").string() + " --out " +
                           (dir / "out").string());
    CHECK(rc == 3);
    CHECK(fs::exists(dir / "out" / "diagnostic.json"));
}

TEST_CASE("sweep writes one row per value and tolerates child failures") {
    const fs::path dir = temp_dir("sweep");
    write(dir / "cfg.json", kBbmbConfig);
    const int rc = run_cli("sweep --config " + (dir / "cfg.json").string() + " --out " +
                           (dir / "out").string() + " --axis controller.mu --values 0.5,1.0");
    CHECK(rc == 0);
    const std::string csv = slurp(dir / "out" / "sweep.csv");
    CHECK(csv.find("value,status,fitted_rate,r_squared,verdict") == 0);
    CHECK(csv.find("\n0.5,") != std::string::npos);
    CHECK(csv.find("\n1,") != std::string::npos);

    // empty values list: header only, still exit 0
    const int rc2 = run_cli("sweep --config " + (dir / "cfg.json").string() + " --out " +
                            (dir / "empty").string() + " --axis controller.mu --values ,");
    CHECK(rc2 == 0);
    const std::string csv2 = slurp(dir / "empty" / "sweep.csv");
    CHECK(csv2 == "value,status,fitted_rate,r_squared,verdict\n");
}

TEST_CASE("check-order reports the CNAB2 order") {
    const fs::path dir = temp_dir("order");
    std::string cfg = kBbmbConfig;
    // linear problem for the order check
    const auto pos = cfg.find("\"identity\"");
    cfg.replace(pos, 10, "\"zero\"");
    write(dir / "cfg.json", cfg);
    const int rc = run_cli("check-order --config " + (dir / "cfg.json").string() +
                           " --dt-list 0.004,0.002,0.001");
    CHECK(rc == 0);
}
