#pragma once

#include <cstdint>
#include <optional>

#include "wiretap/rng.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

// Scenario parameters for one M-antenna transmitter, a single-antenna
// legitimate receiver and a two-antenna eavesdropper.
struct SystemConfig {
  int antennas = 10;            // M, transmit antennas (>= 3)
  int block_len = 200;          // N, symbols per block
  int coherence_len = 200;      // T, coherence length (>= block_len)
  double power_w = 3.16227766016838;  // P, total transmit power (35 dBm)
  double alpha = 0.5;           // fraction of P on the information signal
  double dist_bob_m = 1000.0;
  double dist_eve_m = 1000.0;
  double noise_bob_dbm = -102.0;  // receiver-side noise power, before path-loss scaling
  double noise_eve_dbm = -102.0;
  double pl_ref_db = 148.1;     // path loss at the 1 km reference distance
  double pl_exponent = 3.76;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::domain_error on bad parameters
};

// One block-fading draw. sigma2_* are the equivalent noise powers after the
// received signal is normalized by the path-loss gain, i.e. noise_w / beta.
struct ChannelRealization {
  RowC h_bob;   // 1 x M
  MatC h_eve;   // 2 x M
  double beta_bob = 1.0;
  double beta_eve = 1.0;
  double sigma2_bob = 0.0;
  double sigma2_eve = 0.0;
};

// Fixed matrices injected in place of random draws (path-loss handling is
// unchanged).
struct ChannelOverride {
  std::optional<RowC> h_bob;
  std::optional<MatC> h_eve;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double w);
double db_to_linear(double db);

// Log-distance path loss in dB with a 1 km reference distance.
double path_loss_db(double d_m, double pl_ref_db, double exponent);

ChannelRealization sample_channel(const SystemConfig& config, Rng& rng);
ChannelRealization sample_channel(const SystemConfig& config, Rng& rng,
                                  const ChannelOverride& override_channels);

// Noise/geometry description in the scan coordinates:
//   x = log10(noise_eve / noise_bob)   (receiver-side powers)
//   y = log10(beta_eve / beta_bob)
//   z = log10(dist_bob_m)
struct NoiseGeometry {
  double sigma2_bob;
  double sigma2_eve;
  double dist_bob_m;
  double beta_bob;
  double beta_eve;
};

NoiseGeometry metrics_to_powers(double x, double y, double z, const SystemConfig& config);

struct EveMetrics {
  double x;
  double y;
  double z;
};

EveMetrics powers_to_metrics(const NoiseGeometry& g, const SystemConfig& config);

}  // namespace wiretap
