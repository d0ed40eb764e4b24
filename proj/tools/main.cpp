#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wiretap/harness.hpp"
#include "wiretap/selftest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wiretap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitOutput = 4;

std::vector<double> range_values(double lo, double hi, double step) {
  std::vector<double> v;
  for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
  return v;
}

cd parse_complex(const json& j) { return cd(j.at(0).get<double>(), j.at(1).get<double>()); }

RowC parse_row(const json& j) {
  RowC r(j.size());
  for (size_t i = 0; i < j.size(); ++i) r(static_cast<int>(i)) = parse_complex(j[i]);
  return r;
}

MatC parse_matrix(const json& j) {
  const size_t rows = j.size();
  const size_t cols = j.at(0).size();
  MatC m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k)
      m(static_cast<int>(i), static_cast<int>(k)) = parse_complex(j[i][k]);
  return m;
}

SweepParam parse_param(const std::string& s) {
  if (s == "alpha") return SweepParam::kAlpha;
  if (s == "dist_bob") return SweepParam::kDistBob;
  if (s == "dist_eve") return SweepParam::kDistEve;
  if (s == "antennas") return SweepParam::kAntennas;
  throw std::domain_error("unknown sweep param '" + s + "'");
}

ExperimentSpec spec_from_json(const json& j) {
  ExperimentSpec spec;
  spec.name = j.value("name", std::string("custom"));
  if (j.contains("base")) {
    const json& b = j["base"];
    SystemConfig& c = spec.base;
    c.antennas = b.value("antennas", c.antennas);
    c.block_len = b.value("block_len", c.block_len);
    c.coherence_len = b.value("coherence_len", c.coherence_len);
    c.power_w = b.value("power_w", c.power_w);
    c.alpha = b.value("alpha", c.alpha);
    c.dist_bob_m = b.value("dist_bob_m", c.dist_bob_m);
    c.dist_eve_m = b.value("dist_eve_m", c.dist_eve_m);
    c.noise_bob_dbm = b.value("noise_bob_dbm", c.noise_bob_dbm);
    c.noise_eve_dbm = b.value("noise_eve_dbm", c.noise_eve_dbm);
    c.pl_ref_db = b.value("pl_ref_db", c.pl_ref_db);
    c.pl_exponent = b.value("pl_exponent", c.pl_exponent);
    c.seed = b.value("seed", c.seed);
  }
  if (j.contains("sweep")) {
    spec.param = parse_param(j["sweep"].value("param", std::string("alpha")));
    spec.values = j["sweep"].value("values", std::vector<double>{});
  }
  if (j.contains("sweep2")) {
    spec.has_second_axis = true;
    spec.param2 = parse_param(j["sweep2"].value("param", std::string("dist_eve")));
    spec.values2 = j["sweep2"].value("values", std::vector<double>{});
  }
  spec.trials = j.value("trials", spec.trials);
  const std::string recv = j.value("receiver", std::string("both"));
  spec.receiver = recv == "ogm"   ? ReceiverKind::kOgm
                  : recv == "cac" ? ReceiverKind::kCac
                                  : ReceiverKind::kBoth;
  const std::string metric = j.value("metric", std::string("secrecy_rate"));
  spec.metric = metric == "masr" ? Metric::kMasr
                : metric == "avr" ? Metric::kAvr
                                  : Metric::kSecrecyRate;
  spec.output_path = j.value("output", std::string());
  if (j.contains("u_bar")) spec.u_bar = parse_matrix(j["u_bar"]);
  if (j.contains("override")) {
    const json& o = j["override"];
    if (o.contains("h_bob")) spec.override_channels.h_bob = parse_row(o["h_bob"]);
    if (o.contains("h_eve")) spec.override_channels.h_eve = parse_matrix(o["h_eve"]);
  }
  return spec;
}

struct AvrRanges {
  double x_min = -14.0, x_max = 1.0, x_step = 0.5;
  double y_min = 0.0, y_max = 6.0, y_step = 0.5;
  double z_min = 0.0, z_max = 4.0, z_step = 0.25;
};

AvrRanges ranges_from_json(const json& j) {
  AvrRanges r;
  auto load = [&](const char* key, double& lo, double& hi, double& step) {
    if (!j.contains(key)) return;
    lo = j[key].value("min", lo);
    hi = j[key].value("max", hi);
    step = j[key].value("step", step);
  };
  load("x", r.x_min, r.x_max, r.x_step);
  load("y", r.y_min, r.y_max, r.y_step);
  load("z", r.z_min, r.z_max, r.z_step);
  return r;
}

std::string resolve_output(const std::string& requested, const std::string& out_dir,
                           const std::string& fallback_name) {
  fs::path p = requested.empty() ? fs::path(fallback_name) : fs::path(requested);
  if (p.is_relative() && !out_dir.empty()) p = fs::path(out_dir) / p;
  return p.string();
}

int run_spec(ExperimentSpec spec, const AvrRanges& ranges, const std::string& out_dir,
             int threads, bool verbose) {
  spec.output_path = resolve_output(spec.output_path, out_dir, spec.name + ".csv");
  try {
    if (spec.metric == Metric::kAvr) {
      const AvrScan scan =
          run_avr_scan(spec, range_values(ranges.x_min, ranges.x_max, ranges.x_step),
                       range_values(ranges.y_min, ranges.y_max, ranges.y_step),
                       range_values(ranges.z_min, ranges.z_max, ranges.z_step));
      size_t zero_points = 0;
      for (const AvrPoint& p : scan.points) zero_points += p.verdict ? 1 : 0;
      std::cout << "wrote " << spec.output_path << " (" << scan.points.size() << " points, "
                << zero_points << " zero-secrecy)\n";
      return kExitOk;
    }
    const std::vector<ResultRow> rows = run_experiment(spec, threads);
    if (verbose) {
      for (const ResultRow& r : rows) {
        std::cout << r.receiver << " sweep=(" << r.sweep_a << "," << r.sweep_b
                  << ") mean=" << r.mean_rate << " stderr=" << r.std_err
                  << " skipped=" << r.skipped << "\n";
      }
    }
    std::cout << "wrote " << spec.output_path << " (" << rows.size() << " rows)\n";
    return kExitOk;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: output: " << e.what() << "\n";
    return kExitOutput;
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    return msg.rfind("cannot write", 0) == 0 ? kExitOutput : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Artificial-noise wiretap simulator: secrecy rates against an optimal "
      "eavesdropping filter.\n"
      "Exit codes: 0 success, 1 runtime failure, 2 bad usage, 3 bad config file, "
      "4 unwritable output."};
  app.require_subcommand(1);
  app.fallthrough(true);  // accept global options after the subcommand

  std::string out_dir;
  if (const char* env = std::getenv("WIRETAP_OUT")) out_dir = env;
  bool verbose = false;
  int threads = 1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
  app.add_flag("--verbose", verbose, "print per-row results");
  app.add_option("--out", out_dir, "output directory (default: WIRETAP_OUT or cwd)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "override the experiment seed")->each([&](const std::string&) {
    seed_set = true;
  });
  app.add_option("--trials", trials, "override the trial count")->check(CLI::PositiveNumber);

  auto* cmd_run = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path;
  cmd_run->add_option("--config", config_path, "JSON experiment config")->required();

  auto* cmd_preset = app.add_subcommand("preset", "run a bundled experiment preset");
  std::string preset_name;
  cmd_preset->add_option("name", preset_name, "fig3 | fig4 | fig5 | fig6")->required();

  auto* cmd_selftest = app.add_subcommand("selftest", "run the structural invariant suite");
  std::uint64_t selftest_seed = 7;
  cmd_selftest->add_option("--selftest-seed", selftest_seed, "seed for the invariant suite");

  auto* cmd_avr = app.add_subcommand("avr", "zero-secrecy region scan on the fixed channels");
  AvrRanges cli_ranges;
  cmd_avr->add_option("--x-min", cli_ranges.x_min);
  cmd_avr->add_option("--x-max", cli_ranges.x_max);
  cmd_avr->add_option("--x-step", cli_ranges.x_step);
  cmd_avr->add_option("--y-min", cli_ranges.y_min);
  cmd_avr->add_option("--y-max", cli_ranges.y_max);
  cmd_avr->add_option("--y-step", cli_ranges.y_step);
  cmd_avr->add_option("--z-min", cli_ranges.z_min);
  cmd_avr->add_option("--z-max", cli_ranges.z_max);
  cmd_avr->add_option("--z-step", cli_ranges.z_step);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto apply_overrides = [&](ExperimentSpec& spec) {
    if (seed_set) spec.base.seed = seed;
    if (trials > 0) spec.trials = trials;
  };

  if (*cmd_selftest) {
    const std::vector<CheckResult> checks = run_selftest(selftest_seed);
    int failed = 0;
    for (const CheckResult& c : checks) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (" << c.detail << ")\n";
      failed += c.pass ? 0 : 1;
    }
    std::cout << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return failed == 0 ? kExitOk : kExitRuntime;
  }

  if (*cmd_run) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config file: " << config_path << "\n";
      return kExitConfig;
    }
    json j;
    ExperimentSpec spec;
    AvrRanges ranges;
    try {
      in >> j;
      spec = spec_from_json(j);
      if (j.contains("avr")) ranges = ranges_from_json(j["avr"]);
    } catch (const std::exception& e) {
      std::cerr << "error: malformed config " << config_path << ": " << e.what() << "\n";
      return kExitConfig;
    }
    apply_overrides(spec);
    return run_spec(spec, ranges, out_dir, threads, verbose);
  }

  if (*cmd_preset) {
    ExperimentSpec spec;
    try {
      spec = preset(preset_name);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    apply_overrides(spec);
    return run_spec(spec, AvrRanges{}, out_dir, threads, verbose);
  }

  if (*cmd_avr) {
    ExperimentSpec spec = preset("fig4");
    spec.name = "avr";
    apply_overrides(spec);
    return run_spec(spec, cli_ranges, out_dir, threads, verbose);
  }

  return kExitUsage;
}
