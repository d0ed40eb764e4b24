#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wiretap/harness.hpp"

using namespace wiretap;

namespace {

ExperimentSpec fixed_channel_spec() {
  ExperimentSpec spec;
  spec.name = "fixed";
  spec.base.antennas = 4;
  spec.base.power_w = 1.0;
  spec.base.pl_ref_db = 0.0;
  spec.base.pl_exponent = 0.0;
  spec.base.noise_bob_dbm = watt_to_dbm(1e-3);
  spec.base.noise_eve_dbm = spec.base.noise_bob_dbm;
  spec.param = SweepParam::kAlpha;
  spec.values = {0.5};
  spec.trials = 1;
  spec.receiver = ReceiverKind::kBoth;
  spec.metric = Metric::kSecrecyRate;
  spec.override_channels.h_bob = preset_h_bob();
  spec.override_channels.h_eve = preset_h_eve();
  spec.u_bar = preset_u_bar();
  return spec;
}

ExperimentSpec small_sweep_spec(int trials) {
  ExperimentSpec spec;
  spec.name = "sweep";
  spec.base.antennas = 6;
  spec.base.pl_ref_db = 0.0;
  spec.base.pl_exponent = 0.0;
  spec.base.noise_bob_dbm = watt_to_dbm(spec.base.power_w / 1000.0);
  spec.base.noise_eve_dbm = spec.base.noise_bob_dbm;
  spec.base.seed = 9;
  spec.param = SweepParam::kAlpha;
  spec.values = {0.3, 0.6};
  spec.trials = trials;
  spec.receiver = ReceiverKind::kOgm;
  spec.metric = Metric::kSecrecyRate;
  return spec;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("single-trial experiment reproduces the fixed-channel rates") {
  const std::vector<ResultRow> rows = run_experiment(fixed_channel_spec());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].receiver == "ogm");
  CHECK(rows[0].mean_rate == doctest::Approx(4.95000536598151).epsilon(1e-9));
  CHECK(rows[0].std_err == 0.0);
  CHECK(rows[0].skipped == 0);
  CHECK(rows[1].receiver == "cac");
  CHECK(rows[1].mean_rate ==
        doctest::Approx(11.7172480058276 - 0.984904940749003).epsilon(1e-9));
}

TEST_CASE("experiments are deterministic and thread-count invariant") {
  const ExperimentSpec spec = small_sweep_spec(64);
  const std::vector<ResultRow> a = run_experiment(spec, 1);
  const std::vector<ResultRow> b = run_experiment(spec, 1);
  const std::vector<ResultRow> c = run_experiment(spec, 4);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mean_rate == b[i].mean_rate);
    CHECK(a[i].std_err == b[i].std_err);
    CHECK(a[i].mean_rate == c[i].mean_rate);
    CHECK(a[i].std_err == c[i].std_err);
  }
}

TEST_CASE("quadrupling the trials roughly halves the standard error") {
  const std::vector<ResultRow> small = run_experiment(small_sweep_spec(200));
  const std::vector<ResultRow> big = run_experiment(small_sweep_spec(800));
  for (size_t i = 0; i < small.size(); ++i) {
    REQUIRE(big[i].std_err > 0.0);
    const double ratio = small[i].std_err / big[i].std_err;
    CHECK(ratio > 1.4);
    CHECK(ratio < 2.9);
  }
}

TEST_CASE("experiment validation rejects malformed specs") {
  ExperimentSpec spec = small_sweep_spec(8);
  spec.values.clear();
  CHECK_THROWS_AS(run_experiment(spec), std::domain_error);
  spec = small_sweep_spec(0);
  CHECK_THROWS_AS(run_experiment(spec), std::domain_error);
  spec = small_sweep_spec(8);
  spec.metric = Metric::kAvr;
  CHECK_THROWS_AS(run_experiment(spec), std::domain_error);
}

TEST_CASE("power-split preset uses a 30 dB transmit SNR and full grid") {
  const ExperimentSpec spec = preset("fig3");
  CHECK(spec.base.antennas == 10);
  REQUIRE(spec.values.size() == 21);
  CHECK(spec.values.front() == 0.0);
  CHECK(spec.values.back() == 1.0);
  CHECK(spec.trials == 1000);
  const double snr = spec.base.power_w / dbm_to_watt(spec.base.noise_bob_dbm);
  CHECK(snr == doctest::Approx(1000.0).epsilon(1e-9));
  CHECK(spec.base.noise_eve_dbm == spec.base.noise_bob_dbm);
  CHECK(spec.base.pl_ref_db == 0.0);
}

TEST_CASE("region-scan preset pins the fixed channels and transform") {
  const ExperimentSpec spec = preset("fig4");
  REQUIRE(spec.override_channels.h_bob.has_value());
  REQUIRE(spec.override_channels.h_eve.has_value());
  CHECK((*spec.override_channels.h_bob - preset_h_bob()).norm() == 0.0);
  CHECK((*spec.override_channels.h_eve - preset_h_eve()).norm() == 0.0);
  CHECK((spec.u_bar - preset_u_bar()).norm() == 0.0);
  CHECK((spec.u_bar.adjoint() * spec.u_bar - Mat2C::Identity()).norm() < 1e-9);
  CHECK(spec.metric == Metric::kAvr);
}

TEST_CASE("distance presets fix the geometry axes") {
  const ExperimentSpec f5 = preset("fig5");
  CHECK(f5.param == SweepParam::kDistBob);
  CHECK(f5.has_second_axis);
  CHECK(f5.param2 == SweepParam::kDistEve);
  CHECK(f5.values == f5.values2);
  CHECK(f5.metric == Metric::kMasr);

  const ExperimentSpec f6 = preset("fig6");
  CHECK(f6.base.dist_eve_m == 1000.0);
  CHECK(f6.param2 == SweepParam::kAntennas);
  CHECK(f6.values2 == std::vector<double>{4.0, 10.0, 32.0, 64.0});
  CHECK(f6.base.alpha == doctest::Approx(0.55).epsilon(1e-12));
}

TEST_CASE("unknown preset names are rejected with the valid list") {
  try {
    preset("fig7");
    FAIL("expected a domain_error");
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("fig3") != std::string::npos);
    CHECK(msg.find("fig7") != std::string::npos);
  }
}

TEST_CASE("result files are reproducible up to the timestamp line") {
  ExperimentSpec spec = small_sweep_spec(16);
  const std::string p1 = "harness_test_a.csv";
  const std::string p2 = "harness_test_b.csv";
  spec.output_path = p1;
  run_experiment(spec);
  spec.output_path = p2;
  run_experiment(spec);
  const std::vector<std::string> a = read_lines(p1);
  const std::vector<std::string> b = read_lines(p2);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == 3 + spec.values.size());
  CHECK(a[2] == "sweep_a,sweep_b,receiver,mean_rate,std_err,trials,seed,skipped");
  for (size_t i = 0; i < a.size(); ++i) {
    if (i == 1) continue;  // generation timestamp
    CHECK(a[i] == b[i]);
  }
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("region scan files carry the flag columns") {
  ExperimentSpec spec = preset("fig4");
  spec.output_path = "harness_test_avr.csv";
  const AvrScan scan = run_avr_scan(spec, {-13.0, 0.0}, {0.5}, {3.0});
  REQUIRE(scan.points.size() == 2);
  CHECK(scan.points[0].verdict);
  CHECK_FALSE(scan.points[1].verdict);
  const std::vector<std::string> lines = read_lines(spec.output_path);
  REQUIRE(lines.size() == 5);
  CHECK(lines[2] == "x,y,z,increasing,decreasing,constant,boundary,zero_rate,verdict,masr");
  std::remove(spec.output_path.c_str());
}
