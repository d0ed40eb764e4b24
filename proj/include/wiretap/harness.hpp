#pragma once

#include <string>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/secrecy.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

enum class ReceiverKind { kOgm, kCac, kBoth };
enum class SweepParam { kAlpha, kDistBob, kDistEve, kAntennas };
enum class Metric { kSecrecyRate, kMasr, kAvr };

// One Monte Carlo experiment: a parameter sweep (optionally two-dimensional)
// with per-trial channel draws and aggregate statistics per sweep point.
struct ExperimentSpec {
  std::string name = "custom";
  SystemConfig base;
  SweepParam param = SweepParam::kAlpha;
  std::vector<double> values;
  bool has_second_axis = false;
  SweepParam param2 = SweepParam::kDistEve;
  std::vector<double> values2;
  int trials = 1000;
  ReceiverKind receiver = ReceiverKind::kBoth;
  Metric metric = Metric::kSecrecyRate;
  std::string output_path;
  ChannelOverride override_channels;
  Mat2C u_bar = Mat2C::Identity();
};

struct ResultRow {
  double sweep_a = 0.0;
  double sweep_b = 0.0;
  std::string receiver;
  double mean_rate = 0.0;
  double std_err = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int skipped = 0;
};

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, int threads = 1);

// Paper-style presets: fig3 (power-split sweep), fig4 (zero-secrecy region
// scan on the fixed channels), fig5 (distance grid, vanishing noise),
// fig6 (distance x antenna grid).
ExperimentSpec preset(const std::string& name);

// Fixed channel matrices and transform used by the fig3/fig4 presets.
RowC preset_h_bob();
MatC preset_h_eve();
Mat2C preset_u_bar();

void write_csv(const std::string& path, const ExperimentSpec& spec,
               const std::vector<ResultRow>& rows);
void write_avr_csv(const std::string& path, const ExperimentSpec& spec, const AvrScan& scan);

// Runs the region scan for a fig4-style spec.
AvrScan run_avr_scan(const ExperimentSpec& spec, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::vector<double>& zs);

}  // namespace wiretap
