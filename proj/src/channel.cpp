#include "wiretap/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace wiretap {

void SystemConfig::validate() const {
  if (antennas < 3) throw std::domain_error("antennas must be >= 3");
  if (block_len < 1) throw std::domain_error("block_len must be >= 1");
  if (coherence_len < block_len) throw std::domain_error("coherence_len must be >= block_len");
  if (!(power_w > 0.0)) throw std::domain_error("power_w must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must be in [0, 1]");
  if (!(dist_bob_m > 0.0)) throw std::domain_error("dist_bob_m must be positive");
  if (!(dist_eve_m > 0.0)) throw std::domain_error("dist_eve_m must be positive");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double path_loss_db(double d_m, double pl_ref_db, double exponent) {
  if (!(d_m > 0.0)) throw std::domain_error("distance must be positive");
  return pl_ref_db + 10.0 * exponent * std::log10(d_m / 1000.0);
}

namespace {

MatC draw_cn01(int rows, int cols, Rng& rng) {
  MatC m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.cgaussian();
  return m;
}

}  // namespace

ChannelRealization sample_channel(const SystemConfig& config, Rng& rng) {
  return sample_channel(config, rng, ChannelOverride{});
}

ChannelRealization sample_channel(const SystemConfig& config, Rng& rng,
                                  const ChannelOverride& override_channels) {
  config.validate();
  ChannelRealization ch;
  ch.h_bob = draw_cn01(1, config.antennas, rng).row(0);
  ch.h_eve = draw_cn01(2, config.antennas, rng);
  if (override_channels.h_bob) {
    if (override_channels.h_bob->cols() != config.antennas)
      throw std::domain_error("h_bob override has wrong length");
    ch.h_bob = *override_channels.h_bob;
  }
  if (override_channels.h_eve) {
    if (override_channels.h_eve->rows() != 2 || override_channels.h_eve->cols() != config.antennas)
      throw std::domain_error("h_eve override has wrong shape");
    ch.h_eve = *override_channels.h_eve;
  }
  ch.beta_bob = db_to_linear(-path_loss_db(config.dist_bob_m, config.pl_ref_db, config.pl_exponent));
  ch.beta_eve = db_to_linear(-path_loss_db(config.dist_eve_m, config.pl_ref_db, config.pl_exponent));
  ch.sigma2_bob = dbm_to_watt(config.noise_bob_dbm) / ch.beta_bob;
  ch.sigma2_eve = dbm_to_watt(config.noise_eve_dbm) / ch.beta_eve;
  return ch;
}

NoiseGeometry metrics_to_powers(double x, double y, double z, const SystemConfig& config) {
  NoiseGeometry g;
  g.dist_bob_m = std::pow(10.0, z);
  g.beta_bob = db_to_linear(-path_loss_db(g.dist_bob_m, config.pl_ref_db, config.pl_exponent));
  g.beta_eve = std::pow(10.0, y) * g.beta_bob;
  const double noise_bob_w = dbm_to_watt(config.noise_bob_dbm);
  const double noise_eve_w = std::pow(10.0, x) * noise_bob_w;
  g.sigma2_bob = noise_bob_w / g.beta_bob;
  g.sigma2_eve = noise_eve_w / g.beta_eve;
  return g;
}

EveMetrics powers_to_metrics(const NoiseGeometry& g, const SystemConfig& config) {
  const double noise_bob_w = dbm_to_watt(config.noise_bob_dbm);
  const double noise_eve_w = g.sigma2_eve * g.beta_eve;
  EveMetrics m;
  m.x = std::log10(noise_eve_w / noise_bob_w);
  m.y = std::log10(g.beta_eve / g.beta_bob);
  m.z = std::log10(g.dist_bob_m);
  return m;
}

}  // namespace wiretap
