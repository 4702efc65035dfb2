#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catlight/analysis.hpp"
#include "catlight/errors.hpp"
#include "catlight/experiments.hpp"
#include "catlight/photon.hpp"
#include "catlight/trajectory.hpp"

using namespace catlight;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("catlight_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Small enough to run in milliseconds but still exercising every mode.
ExperimentSpec tiny_custom() {
  ExperimentSpec spec = default_spec(ExperimentKind::custom);
  spec.physics.cutoff = 6;
  spec.physics.t_max = 1.0;
  spec.alpha0 = Complex{0.3, 0.0};
  return spec;
}

}  // namespace

TEST_CASE("validate rejects bad specs with one issue per violation") {
  ExperimentSpec spec = default_spec(ExperimentKind::negativity_sweep);
  spec.alpha0_sweep.clear();
  spec.physics.dt = -1.0;
  try {
    (void)validate(spec);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.issues().size() == 2);
  }
}

TEST_CASE("validate rejects non-increasing sweep grids") {
  ExperimentSpec spec = default_spec(ExperimentKind::gamma_scaling);
  spec.gamma_sweep = {1e-3, 1e-3};
  CHECK_THROWS_AS((void)validate(spec), ConfigError);
}

TEST_CASE("validate warns about an inadequate photon cutoff") {
  ExperimentSpec spec = default_spec(ExperimentKind::interference_dynamics);
  spec.physics.cutoff = 1;
  spec.alpha0 = Complex{0.8, 0.0};
  std::vector<std::string> warnings;
  (void)validate(spec, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("truncation deficit") != std::string::npos);

  // a zero cutoff is a hard error, not a warning
  spec.physics.cutoff = 0;
  CHECK_THROWS_AS((void)validate(spec), ConfigError);
}

TEST_CASE("validation is idempotent on defaults") {
  for (ExperimentKind kind :
       {ExperimentKind::interference_dynamics, ExperimentKind::negativity_sweep,
        ExperimentKind::gamma_scaling, ExperimentKind::custom}) {
    const ExperimentSpec spec = default_spec(kind);
    CHECK(resolved_config(validate(spec)) == resolved_config(spec));
  }
}

TEST_CASE("config parsing") {
  SUBCASE("values, lists and ranges") {
    const std::string text =
        "# comment\n"
        "[negativity_sweep]\n"
        "gamma = 2e-3\n"
        "rwa = true\n"
        "alpha0_list = 0:0.5:1.5\n"
        "modes = full, xfa_sg\n"
        "output = neg.csv\n";
    const ExperimentSpec spec = spec_from_string(ExperimentKind::negativity_sweep, text);
    CHECK(spec.physics.gamma == 2e-3);
    CHECK(spec.physics.rwa);
    CHECK(spec.alpha0_sweep == std::vector<double>{0.0, 0.5, 1.0, 1.5});
    REQUIRE(spec.modes.size() == 2);
    CHECK(spec.modes[1] == RunMode::xfa_sg);
    CHECK(spec.output == "neg.csv");
  }

  SUBCASE("log-spaced gamma grid") {
    const std::string text =
        "[gamma_scaling]\n"
        "gamma_min = 1e-4\n"
        "gamma_max = 1e-2\n"
        "gamma_points = 3\n";
    const ExperimentSpec spec = spec_from_string(ExperimentKind::gamma_scaling, text);
    REQUIRE(spec.gamma_sweep.size() == 3);
    CHECK(spec.gamma_sweep[1] == doctest::Approx(1e-3).epsilon(1e-12));
  }

  SUBCASE("complex amplitude via re/im keys") {
    const std::string text = "[custom]\nalpha0_re = 0.2\nalpha0_im = -0.4\n";
    const ExperimentSpec spec = spec_from_string(ExperimentKind::custom, text);
    CHECK(spec.alpha0 == Complex{0.2, -0.4});
  }

  SUBCASE("unknown keys, duplicates and missing sections are errors") {
    CHECK_THROWS_AS((void)spec_from_string(ExperimentKind::custom,
                                           "[custom]\nnot_a_key = 1\n"),
                    ConfigError);
    CHECK_THROWS_AS((void)spec_from_string(ExperimentKind::custom,
                                           "[custom]\ndt = 0.1\ndt = 0.2\n"),
                    ConfigError);
    CHECK_THROWS_AS((void)spec_from_string(ExperimentKind::custom, "[gamma_scaling]\n"),
                    ConfigError);
  }
}

TEST_CASE("runs are deterministic across thread counts and reruns") {
  ExperimentSpec spec = tiny_custom();

  const fs::path d1 = fresh_dir("det1");
  const fs::path d2 = fresh_dir("det2");
  const fs::path d3 = fresh_dir("det3");

  spec.out_dir = d1;
  spec.threads = 1;
  const auto f1 = run(spec);
  spec.out_dir = d2;
  spec.threads = 4;
  const auto f2 = run(spec);
  spec.out_dir = d3;
  spec.threads = 1;
  const auto f3 = run(spec);

  REQUIRE(f1.size() == 1);
  const std::string b1 = slurp(f1[0]);
  CHECK(b1 == slurp(f2[0]));
  CHECK(b1 == slurp(f3[0]));
  CHECK(!b1.empty());
}

TEST_CASE("CSV carries the resolved-config stamp and a header row") {
  ExperimentSpec spec = tiny_custom();
  spec.out_dir = fresh_dir("stamp");
  const auto files = run(spec);
  const std::string body = slurp(files[0]);
  CHECK(body.rfind("# resolved-config: kind=custom;", 0) == 0);
  const auto header_start = body.find('\n') + 1;
  const std::string header = body.substr(header_start, body.find('\n', header_start) - header_start);
  CHECK(header.rfind("t,", 0) == 0);
  CHECK(header.find("full_negativity") != std::string::npos);
  CHECK(header.find("xfa_sg_trace_distance") != std::string::npos);
  CHECK(header.find("xfa_sg_traj0_single_exc_re") != std::string::npos);
}

TEST_CASE("vacuum cat drive yields zero negativity") {
  ExperimentSpec spec = default_spec(ExperimentKind::negativity_sweep);
  spec.physics.cutoff = 6;
  spec.physics.t_max = 2.0;
  spec.physics.rwa = true;
  spec.alpha0_sweep = {0.0, 0.2};
  spec.modes = {RunMode::full, RunMode::xfa_sg};
  spec.out_dir = fresh_dir("vacuum");
  const auto files = run(spec);

  std::ifstream in(files[0]);
  std::string line;
  std::getline(in, line);  // stamp
  std::getline(in, line);  // header
  REQUIRE(line == "alpha0,negativity_full,negativity_xfa_sg");
  std::getline(in, line);  // alpha0 = 0 row
  double alpha = -1.0, nf = -1.0, nx = -1.0;
  REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &alpha, &nf, &nx) == 3);
  CHECK(alpha == 0.0);
  CHECK(nf <= 1e-12);
  CHECK(nx <= 1e-12);
}

TEST_CASE("gamma scaling emits distances and fitted slopes") {
  ExperimentSpec spec = default_spec(ExperimentKind::gamma_scaling);
  spec.physics.cutoff = 20;
  spec.physics.t_max = 5.0;
  spec.gamma_sweep = {1e-3, 3e-3, 1e-2};
  spec.out_dir = fresh_dir("scaling");
  const auto files = run(spec);
  REQUIRE(files.size() == 2);
  const std::string table = slurp(files[0]);
  CHECK(table.find("gamma,distance_cat,distance_coherent") != std::string::npos);
  const std::string slopes = slurp(files[1]);
  CHECK(slopes.find("light,slope,points_used,floor") != std::string::npos);
  CHECK(slopes.find("cat,") != std::string::npos);
  CHECK(slopes.find("coherent,") != std::string::npos);
}

TEST_CASE("emitted trace-distance column matches direct library values") {
  ExperimentSpec spec = default_spec(ExperimentKind::interference_dynamics);
  spec.physics.cutoff = 20;
  spec.physics.t_max = 5.0;
  spec.modes = {RunMode::full, RunMode::xfa_sg};
  spec.out_dir = fresh_dir("column_check");
  const auto files = run(spec);

  // locate the column and re-parse the printed doubles (%.17g round-trips)
  std::ifstream in(files[0]);
  std::string line;
  std::getline(in, line);  // stamp
  std::getline(in, line);  // header
  std::vector<std::string> names;
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) names.push_back(cell);
  }
  const auto col_it = std::find(names.begin(), names.end(), "xfa_sg_trace_distance");
  REQUIRE(col_it != names.end());
  const std::size_t col = col_it - names.begin();

  std::vector<double> emitted;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    for (std::size_t i = 0; i <= col; ++i) std::getline(row, cell, ',');
    emitted.push_back(std::stod(cell));
  }

  // same physics straight from the library
  std::vector<TwoBodyMatrix> full_rho;
  evolve_full(spec.physics, cat_fock(spec.alpha0, spec.physics.cutoff),
              [&](const FullState& s) { full_rho.push_back(partial_trace_photon(s)); });
  const EnsembleSeries sg =
      evolve_ensemble(cat_p(spec.alpha0), spec.physics, TheoryMode::sudarshan_glauber);
  REQUIRE(emitted.size() == full_rho.size());
  for (std::size_t k = 0; k < emitted.size(); ++k) {
    CHECK(std::abs(emitted[k] - trace_distance(full_rho[k], sg.assembled[k])) <= 1e-15);
  }
}

TEST_CASE("simulation guard errors carry the failing grid point") {
  ExperimentSpec spec = tiny_custom();
  spec.physics.dt = 0.9;  // unstable for the populated spectrum
  spec.physics.t_max = 90.0;
  spec.physics.cutoff = 30;
  spec.alpha0 = Complex{0.8, 0.0};
  spec.out_dir = fresh_dir("guard");
  try {
    (void)run(spec);
    FAIL("expected NormDrift");
  } catch (const NormDrift& e) {
    CHECK(std::string(e.what()).find("gamma=") != std::string::npos);
    CHECK(std::string(e.what()).find("alpha0=") != std::string::npos);
  }
}
