#include "wiretap/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "wiretap/receiver.hpp"
#include "wiretap/rng.hpp"
#include "wiretap/transmit.hpp"

namespace wiretap {

namespace {

double clip0(double v) { return v > 0.0 ? v : 0.0; }

SystemConfig apply_param(SystemConfig cfg, SweepParam p, double v) {
  switch (p) {
    case SweepParam::kAlpha: cfg.alpha = v; break;
    case SweepParam::kDistBob: cfg.dist_bob_m = v; break;
    case SweepParam::kDistEve: cfg.dist_eve_m = v; break;
    case SweepParam::kAntennas: cfg.antennas = static_cast<int>(v); break;
  }
  return cfg;
}

double cac_secrecy_at(const SystemConfig& cfg, const ChannelRealization& ch, double alpha) {
  if (alpha <= 0.0) return 0.0;
  const TransmitScheme s = make_transmit_scheme(ch.h_bob, cfg.power_w, alpha);
  const double cb = rate_bob(s.sigma2_x, ch.sigma2_bob, ch.h_bob);
  const double ce = rate_eve_cac(ch.h_eve, s.w, s.w_perp, s.sigma2_x / ch.sigma2_eve,
                                 s.sigma2_a / ch.sigma2_eve, EveCacMode::kNoisy);
  return clip0(cb - ce);
}

double trial_value(const ExperimentSpec& spec, const SystemConfig& cfg,
                   const ChannelRealization& ch, ReceiverKind receiver) {
  if (receiver == ReceiverKind::kOgm) {
    if (spec.metric == Metric::kMasr) {
      return masr(cfg, ch, spec.u_bar, ch.sigma2_eve, uniform_alpha_grid(1001)).masr;
    }
    return secrecy_rate(cfg, ch, spec.u_bar, ch.sigma2_eve).masr;
  }
  // CAC baseline: at the configured power split. Under kMasr the baseline is
  // still reported at the fixed split, matching the reference protocol.
  return cac_secrecy_at(cfg, ch, cfg.alpha);
}

struct Accum {
  double sum = 0.0;
  double sumsq = 0.0;
  int n = 0;
  int skipped = 0;
};

void run_point(const ExperimentSpec& spec, const SystemConfig& cfg, ReceiverKind receiver,
               int threads, Accum& out) {
  std::vector<double> vals(spec.trials);
  std::vector<char> ok(spec.trials, 0);
  const int nthreads = std::max(1, threads);
  auto worker = [&](int first, int last) {
    for (int t = first; t < last; ++t) {
      Rng rng = Rng(spec.base.seed).split(static_cast<std::uint64_t>(t));
      try {
        const ChannelRealization ch = sample_channel(cfg, rng, spec.override_channels);
        vals[t] = trial_value(spec, cfg, ch, receiver);
        ok[t] = 1;
      } catch (const std::exception&) {
        ok[t] = 0;
      }
    }
  };
  if (nthreads == 1 || spec.trials < 2 * nthreads) {
    worker(0, spec.trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (spec.trials + nthreads - 1) / nthreads;
    for (int i = 0; i < nthreads; ++i) {
      const int first = i * chunk;
      const int last = std::min(spec.trials, first + chunk);
      if (first < last) pool.emplace_back(worker, first, last);
    }
    for (auto& th : pool) th.join();
  }
  for (int t = 0; t < spec.trials; ++t) {
    if (!ok[t]) {
      ++out.skipped;
      continue;
    }
    out.sum += vals[t];
    out.sumsq += vals[t] * vals[t];
    ++out.n;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

const char* receiver_tag(ReceiverKind r) { return r == ReceiverKind::kOgm ? "ogm" : "cac"; }

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, int threads) {
  spec.base.validate();
  if (spec.trials < 1) throw std::domain_error("trials must be >= 1");
  if (spec.values.empty()) throw std::domain_error("sweep values must be nonempty");
  if (spec.metric == Metric::kAvr)
    throw std::domain_error("region scans run through run_avr_scan");

  std::vector<ReceiverKind> receivers;
  if (spec.receiver == ReceiverKind::kBoth) {
    receivers = {ReceiverKind::kOgm, ReceiverKind::kCac};
  } else {
    receivers = {spec.receiver};
  }

  std::vector<double> secondary = spec.has_second_axis ? spec.values2 : std::vector<double>{0.0};
  if (spec.has_second_axis && secondary.empty())
    throw std::domain_error("second sweep axis must be nonempty");

  std::vector<ResultRow> rows;
  for (const double va : spec.values) {
    for (const double vb : secondary) {
      SystemConfig cfg = apply_param(spec.base, spec.param, va);
      if (spec.has_second_axis) cfg = apply_param(cfg, spec.param2, vb);
      cfg.validate();
      for (const ReceiverKind r : receivers) {
        Accum acc;
        run_point(spec, cfg, r, threads, acc);
        ResultRow row;
        row.sweep_a = va;
        row.sweep_b = spec.has_second_axis ? vb : 0.0;
        row.receiver = receiver_tag(r);
        row.trials = acc.n;
        row.seed = spec.base.seed;
        row.skipped = acc.skipped;
        if (acc.n > 0) {
          row.mean_rate = acc.sum / acc.n;
          if (acc.n > 1) {
            const double var =
                std::max(0.0, (acc.sumsq - acc.sum * acc.sum / acc.n) / (acc.n - 1));
            row.std_err = std::sqrt(var / acc.n);
          }
        }
        rows.push_back(row);
      }
    }
  }
  if (!spec.output_path.empty()) write_csv(spec.output_path, spec, rows);
  return rows;
}

RowC preset_h_bob() {
  RowC h(4);
  h << cd(-0.71, 0.12), cd(0.41, 0.94), cd(0.20, 0.91), cd(-1.44, 1.49);
  return h;
}

MatC preset_h_eve() {
  MatC h(2, 4);
  h << cd(0.60, -0.80), cd(0.06, 0.61), cd(1.05, -0.28), cd(-0.49, 0.16),
      cd(-0.36, 0.47), cd(-0.42, 0.29), cd(0.09, 1.53), cd(0.10, -0.59);
  return h;
}

Mat2C preset_u_bar() {
  Mat2C u;
  const double a = std::sqrt(0.2257);
  const double b = std::sqrt(0.7743);
  u << cd(-a, 0), cd(-b, 0), cd(-b, 0), cd(a, 0);
  return u;
}

ExperimentSpec preset(const std::string& name) {
  ExperimentSpec spec;
  spec.name = name;
  if (name == "fig3") {
    // 30 dB transmit SNR with unit path gain at both receivers.
    spec.base.antennas = 10;
    spec.base.pl_ref_db = 0.0;
    spec.base.pl_exponent = 0.0;
    spec.base.dist_bob_m = 1000.0;
    spec.base.dist_eve_m = 1000.0;
    spec.base.noise_bob_dbm = watt_to_dbm(spec.base.power_w / 1000.0);
    spec.base.noise_eve_dbm = spec.base.noise_bob_dbm;
    spec.param = SweepParam::kAlpha;
    spec.values = uniform_alpha_grid(21);
    spec.trials = 1000;
    spec.receiver = ReceiverKind::kBoth;
    spec.metric = Metric::kSecrecyRate;
    return spec;
  }
  if (name == "fig4") {
    spec.base.antennas = 4;
    spec.base.dist_eve_m = 1000.0;
    spec.override_channels.h_bob = preset_h_bob();
    spec.override_channels.h_eve = preset_h_eve();
    spec.u_bar = preset_u_bar();
    spec.trials = 1;
    spec.receiver = ReceiverKind::kOgm;
    spec.metric = Metric::kAvr;
    return spec;
  }
  if (name == "fig5") {
    spec.base.antennas = 4;
    spec.base.alpha = 0.5;
    // Vanishing receiver noise at both Bob and Eve.
    spec.base.noise_bob_dbm = -222.0;
    spec.base.noise_eve_dbm = -222.0;
    spec.param = SweepParam::kDistBob;
    spec.values = {1.0, 10.0, 100.0, 1000.0, 5000.0, 10000.0};
    spec.has_second_axis = true;
    spec.param2 = SweepParam::kDistEve;
    spec.values2 = spec.values;
    spec.trials = 200;
    spec.receiver = ReceiverKind::kBoth;
    spec.metric = Metric::kMasr;
    return spec;
  }
  if (name == "fig6") {
    spec.base.alpha = 0.55;
    spec.base.dist_eve_m = 1000.0;
    spec.base.noise_bob_dbm = -222.0;
    spec.base.noise_eve_dbm = -222.0;
    spec.param = SweepParam::kDistBob;
    spec.values = {10.0, 100.0, 1000.0, 5000.0, 10000.0};
    spec.has_second_axis = true;
    spec.param2 = SweepParam::kAntennas;
    spec.values2 = {4.0, 10.0, 32.0, 64.0};
    spec.trials = 200;
    spec.receiver = ReceiverKind::kBoth;
    spec.metric = Metric::kMasr;
    return spec;
  }
  throw std::domain_error("unknown preset '" + name + "'; valid: fig3 fig4 fig5 fig6");
}

AvrScan run_avr_scan(const ExperimentSpec& spec, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::vector<double>& zs) {
  Rng rng(spec.base.seed);
  const ChannelRealization ch = sample_channel(spec.base, rng, spec.override_channels);
  AvrScan scan = avr_scan(ch, spec.u_bar, spec.base, xs, ys, zs);
  if (!spec.output_path.empty()) write_avr_csv(spec.output_path, spec, scan);
  return scan;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  return out;
}

void write_header(std::ofstream& out, const ExperimentSpec& spec) {
  out << "# name=" << spec.name << " seed=" << spec.base.seed << " trials=" << spec.trials
      << "\n";
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  out << "# generated="
      << std::chrono::duration_cast<std::chrono::seconds>(now).count() << "\n";
}

}  // namespace

void write_csv(const std::string& path, const ExperimentSpec& spec,
               const std::vector<ResultRow>& rows) {
  std::ofstream out = open_out(path);
  write_header(out, spec);
  out << "sweep_a,sweep_b,receiver,mean_rate,std_err,trials,seed,skipped\n";
  for (const ResultRow& r : rows) {
    out << fmt(r.sweep_a) << ',' << fmt(r.sweep_b) << ',' << r.receiver << ','
        << fmt(r.mean_rate) << ',' << fmt(r.std_err) << ',' << r.trials << ',' << r.seed << ','
        << r.skipped << "\n";
  }
}

void write_avr_csv(const std::string& path, const ExperimentSpec& spec, const AvrScan& scan) {
  std::ofstream out = open_out(path);
  write_header(out, spec);
  out << "x,y,z,increasing,decreasing,constant,boundary,zero_rate,verdict,masr\n";
  for (const AvrPoint& p : scan.points) {
    out << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.z) << ',' << p.flags.increasing_case
        << ',' << p.flags.decreasing_case << ',' << p.flags.constant_case << ','
        << p.flags.boundary_ok << ',' << p.flags.zero_rate << ',' << p.verdict << ','
        << fmt(p.masr_rate) << "\n";
  }
}

}  // namespace wiretap
