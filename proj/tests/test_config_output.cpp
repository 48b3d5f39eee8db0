#include <cmath>
#include <cstdio>
#include <filesystem>

#include <doctest.h>

#include "rydsim/config.hpp"
#include "rydsim/output.hpp"

using namespace rydsim;

namespace {

const char* kMinimalConfig =
    "experiment = stirap-single\n"
    "system.omega_p = 47.0\n"
    "system.omega_s = 47.0\n"
    "system.gamma_e = 4.5\n"
    "system.tau_r = 2.3\n";

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("config_output") {

TEST_CASE("config boundary units convert to internal units") {
  const std::string text = std::string(kMinimalConfig) +
                           "system.delta_p = 0.1\n"
                           "system.phi = 90\n"
                           "system.linewidth_p = 0.064\n"
                           "pulse.t_rise = 0.2\n"
                           "run.seed = 12\n";
  const RunConfig cfg = parse_config(text, "test.cfg");
  CHECK(cfg.system.omega_p == doctest::Approx(2.0 * M_PI * 47.0));
  CHECK(cfg.system.delta_p == doctest::Approx(2.0 * M_PI * 0.1));
  CHECK(cfg.system.phi == doctest::Approx(M_PI / 2.0));
  CHECK(cfg.system.gamma_laser_p == doctest::Approx(2.0 * M_PI * 0.064));
  CHECK(cfg.system.tau_r == doctest::Approx(2.3));
  CHECK(cfg.t_rise == doctest::Approx(0.2));
  CHECK(cfg.seed == 12);
}

TEST_CASE("missing required fields and malformed lines carry locations") {
  CHECK_THROWS_WITH_AS(parse_config("experiment = stirap-single\n", "t.cfg"),
                       doctest::Contains("system.omega_p"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("experiment stirap-single\n", "t.cfg"),
                       doctest::Contains("t.cfg:1"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(std::string(kMinimalConfig) + "bogus.key = 1\n", "t.cfg"),
      doctest::Contains("t.cfg:6"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(std::string(kMinimalConfig) + "system.tau_r = fast\n", "t.cfg"),
      doctest::Contains("duplicate"), ConfigError);
}

TEST_CASE("scan validation depends on the experiment") {
  const std::string phase = std::string(kMinimalConfig);
  std::string text = phase;
  text.replace(text.find("stirap-single"), 13, "phase-scan   ");
  CHECK_THROWS_WITH_AS(parse_config(text, "t.cfg"), doctest::Contains("scan.points"),
                       ConfigError);
  text += "scan.start = 0\nscan.stop = 360\nscan.points = 25\n";
  CHECK_NOTHROW(parse_config(text, "t.cfg"));
}

TEST_CASE("overrides replace values and revalidate") {
  RunConfig cfg = parse_config(kMinimalConfig, "t.cfg");
  apply_override(cfg, "system.tau_r=4.6");
  CHECK(cfg.system.tau_r == doctest::Approx(4.6));
  CHECK_THROWS_AS(apply_override(cfg, "nonsense"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "bogus.key=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "system.tau_r=-1"), ConfigError);
}

TEST_CASE("override batches validate as a whole, not one at a time") {
  RunConfig cfg = parse_config(kMinimalConfig, "t.cfg");
  // switching experiment and supplying its scan axes must work in one batch
  apply_overrides(cfg, {"experiment=avoided-crossing", "scan.start=-15",
                        "scan.stop=15", "scan.points=31", "scan2.start=-10",
                        "scan2.stop=10", "scan2.points=5"});
  CHECK(cfg.experiment == "avoided-crossing");
  CHECK(cfg.scan2_points == 5);
  // later assignments win
  apply_overrides(cfg, {"run.seed=3", "run.seed=9"});
  CHECK(cfg.seed == 9);
}

TEST_CASE("spectroscopy overrides swap the drive strengths") {
  const std::string text = std::string(kMinimalConfig) +
                           "spectro.omega_p = 0.45\n"
                           "spectro.omega_s = 12.1\n";
  const RunConfig cfg = parse_config(text, "t.cfg");
  const SystemParams sys = cfg.spectroscopy_system();
  CHECK(sys.omega_p == doctest::Approx(2.0 * M_PI * 0.45));
  CHECK(sys.omega_s == doctest::Approx(2.0 * M_PI * 12.1));
  CHECK(cfg.system.omega_p == doctest::Approx(2.0 * M_PI * 47.0));
}

TEST_CASE("manifest replay reproduces the derived configuration") {
  RunConfig cfg = parse_config(std::string(kMinimalConfig) + "run.seed = 77\n", "t.cfg");
  const std::string manifest = manifest_json(cfg, {"a.csv"});
  const std::string path = temp_path("rydsim_manifest_test.json");
  write_text_file(path, manifest);
  const RunConfig replay = load_config(path);
  CHECK(replay.experiment == cfg.experiment);
  CHECK(replay.seed == cfg.seed);
  CHECK(replay.system.omega_p == doctest::Approx(cfg.system.omega_p));
  CHECK(replay.values == cfg.values);
  std::remove(path.c_str());
}

TEST_CASE("result CSV is deterministic and carries metadata comments") {
  ExperimentResult r;
  r.x_name = "phi_rad";
  r.x = {0.0, 1.0};
  r.p = {0.25, 0.75};
  r.shots = 50;
  r.counts = {12, 40};
  const std::map<std::string, std::string> meta = {{"experiment", "phase-scan"}};
  const std::string a = result_to_csv(r, meta);
  const std::string b = result_to_csv(r, meta);
  CHECK(a == b);
  CHECK(a.find("# experiment = phase-scan") != std::string::npos);
  CHECK(a.find("phi_rad,p_model,counts,shots") != std::string::npos);
  CHECK(a.find("1,0.75,40,50") != std::string::npos);
}

TEST_CASE("plot scripts are chosen from the column layout") {
  ExperimentResult fringe;
  fringe.x_name = "phi_rad";
  fringe.x = {0.0, 1.0};
  fringe.p = {0.2, 0.4};
  const std::string fringe_csv = result_to_csv(fringe, {});
  const std::string fringe_py = plot_script_for_csv(fringe_csv, "f.csv");
  CHECK(fringe_py.find("phi_rad") != std::string::npos);
  CHECK(fringe_py.find("matplotlib") != std::string::npos);

  CrossingMap map;
  map.delta_p_mhz = {-1.0, 0.0, 1.0};
  map.delta_s_mhz = {-2.0, 2.0};
  map.prob = {{0.1, 0.2, 0.3}, {0.3, 0.2, 0.1}};
  const std::string cross_csv = crossing_to_csv(map, {{"omega_s_mhz", "12.1"}});
  const std::string cross_py = plot_script_for_csv(cross_csv, "c.csv");
  CHECK(cross_py.find("omega_s_mhz") != std::string::npos);
  CHECK(cross_py.find("sqrt(d * d + omega_s * omega_s)") != std::string::npos);

  CHECK_THROWS_AS(plot_script_for_csv("", "empty.csv"), ConfigError);
  CHECK_THROWS_AS(plot_script_for_csv("a,b\n1,2\n", "odd.csv"), ConfigError);
}

TEST_CASE("number formatting is stable") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1e-7) == "1e-07");
  CHECK(format_number(2.0 * M_PI * 47.0) == "295.309709437");
}

}  // TEST_SUITE
