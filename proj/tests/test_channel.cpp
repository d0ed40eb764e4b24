#include <doctest.h>

#include <cmath>

#include "wiretap/channel.hpp"
#include "wiretap/harness.hpp"

using namespace wiretap;

TEST_CASE("path loss matches the log-distance model") {
  CHECK(path_loss_db(1000.0, 148.1, 3.76) == doctest::Approx(148.1).epsilon(1e-12));
  CHECK(path_loss_db(10000.0, 148.1, 3.76) == doctest::Approx(185.7).epsilon(1e-12));
  CHECK(path_loss_db(1000.0, 0.0, 0.0) == doctest::Approx(0.0));
  CHECK(path_loss_db(2000.0, 148.1, 3.76) > path_loss_db(1000.0, 148.1, 3.76));
  CHECK_THROWS_AS(path_loss_db(0.0, 148.1, 3.76), std::domain_error);
  CHECK_THROWS_AS(path_loss_db(-5.0, 148.1, 3.76), std::domain_error);
}

TEST_CASE("path loss difference is exactly the distance term") {
  const double n = 3.76;
  for (double d : {10.0, 250.0, 1000.0, 9000.0}) {
    const double diff = path_loss_db(d, 148.1, n) - path_loss_db(1000.0, 148.1, n);
    CHECK(diff == doctest::Approx(10.0 * n * std::log10(d / 1000.0)).epsilon(1e-12));
  }
}

TEST_CASE("dbm and watt conversions") {
  CHECK(dbm_to_watt(35.0) == doctest::Approx(3.16227766016838).epsilon(1e-12));
  CHECK(dbm_to_watt(-102.0) == doctest::Approx(std::pow(10.0, -13.2)).epsilon(1e-12));
  CHECK(watt_to_dbm(dbm_to_watt(-17.3)) == doctest::Approx(-17.3).epsilon(1e-12));
  CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("config validation rejects bad parameters") {
  SystemConfig cfg;
  cfg.antennas = 2;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = SystemConfig{};
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = SystemConfig{};
  cfg.dist_bob_m = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = SystemConfig{};
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("channel draws are deterministic per seed") {
  SystemConfig cfg;
  Rng a(42), b(42), c(43);
  const ChannelRealization r1 = sample_channel(cfg, a);
  const ChannelRealization r2 = sample_channel(cfg, b);
  const ChannelRealization r3 = sample_channel(cfg, c);
  CHECK((r1.h_bob - r2.h_bob).norm() == 0.0);
  CHECK((r1.h_eve - r2.h_eve).norm() == 0.0);
  CHECK((r1.h_bob - r3.h_bob).norm() > 0.0);
}

TEST_CASE("split streams are independent and reproducible") {
  Rng base(7);
  Rng s1 = base.split(3);
  Rng s2 = Rng(7).split(3);
  Rng s3 = base.split(4);
  CHECK(s1.next_u64() == s2.next_u64());
  CHECK(Rng(7).split(3).next_u64() != s3.next_u64());
}

TEST_CASE("channel entries have unit variance and balanced parts") {
  SystemConfig cfg;
  cfg.antennas = 10;
  Rng rng(11);
  double sum2 = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
  int count = 0;
  for (int i = 0; i < 10000; ++i) {
    Rng r = rng.split(i);
    const ChannelRealization ch = sample_channel(cfg, r);
    for (int j = 0; j < cfg.antennas; ++j) {
      const cd v = ch.h_bob(j);
      sum2 += std::norm(v);
      sum_re2 += v.real() * v.real();
      sum_im2 += v.imag() * v.imag();
      ++count;
    }
  }
  CHECK(sum2 / count > 0.94);
  CHECK(sum2 / count < 1.06);
  CHECK(std::abs(sum_re2 / count - 0.5) < 0.025);
  CHECK(std::abs(sum_im2 / count - 0.5) < 0.025);
}

TEST_CASE("fixed channel override is returned verbatim") {
  SystemConfig cfg;
  cfg.antennas = 4;
  ChannelOverride ov;
  ov.h_bob = preset_h_bob();
  ov.h_eve = preset_h_eve();
  Rng rng(1);
  const ChannelRealization ch = sample_channel(cfg, rng, ov);
  CHECK((ch.h_bob - preset_h_bob()).norm() == 0.0);
  CHECK((ch.h_eve - preset_h_eve()).norm() == 0.0);
  CHECK(ch.beta_bob > 0.0);
  ChannelOverride bad;
  bad.h_bob = RowC::Zero(3);
  Rng rng2(1);
  CHECK_THROWS_AS(sample_channel(cfg, rng2, bad), std::domain_error);
}

TEST_CASE("noise metrics invert to absolute powers") {
  SystemConfig cfg;
  const NoiseGeometry g = metrics_to_powers(0.0, 0.0, 3.0, cfg);
  CHECK(g.dist_bob_m == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(g.beta_eve == doctest::Approx(g.beta_bob).epsilon(1e-12));
  CHECK(g.sigma2_eve == doctest::Approx(g.sigma2_bob).epsilon(1e-12));

  const NoiseGeometry q = metrics_to_powers(-13.0, 0.0, 3.0, cfg);
  const double noise_ratio = (q.sigma2_eve * q.beta_eve) / (q.sigma2_bob * q.beta_bob);
  CHECK(noise_ratio == doctest::Approx(1e-13).epsilon(1e-9));
}

TEST_CASE("metrics round trip to 1e-12 relative") {
  SystemConfig cfg;
  for (double x : {-13.0, -2.5, 0.0, 1.0}) {
    for (double y : {0.0, 2.2, 6.0}) {
      for (double z : {0.0, 1.7, 4.0}) {
        const NoiseGeometry g = metrics_to_powers(x, y, z, cfg);
        const EveMetrics m = powers_to_metrics(g, cfg);
        const NoiseGeometry g2 = metrics_to_powers(m.x, m.y, m.z, cfg);
        CHECK(g2.sigma2_bob == doctest::Approx(g.sigma2_bob).epsilon(1e-12));
        CHECK(g2.sigma2_eve == doctest::Approx(g.sigma2_eve).epsilon(1e-12));
        CHECK(g2.dist_bob_m == doctest::Approx(g.dist_bob_m).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("equivalent noise uses each receiver's own path gain") {
  SystemConfig cfg;
  cfg.dist_bob_m = 100.0;
  cfg.dist_eve_m = 10000.0;
  Rng rng(5);
  const ChannelRealization ch = sample_channel(cfg, rng);
  const double noise_w = dbm_to_watt(cfg.noise_bob_dbm);
  CHECK(ch.sigma2_bob == doctest::Approx(noise_w / ch.beta_bob).epsilon(1e-12));
  CHECK(ch.sigma2_eve == doctest::Approx(noise_w / ch.beta_eve).epsilon(1e-12));
  CHECK(ch.sigma2_eve > ch.sigma2_bob);
}
