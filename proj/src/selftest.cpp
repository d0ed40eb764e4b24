#include "wiretap/selftest.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/QR>

#include "wiretap/channel.hpp"
#include "wiretap/receiver.hpp"
#include "wiretap/secrecy.hpp"
#include "wiretap/transmit.hpp"

namespace wiretap {

namespace {

struct Instance {
  ChannelRealization ch;
  TransmitScheme scheme;
  Mat2C u_bar;
  MatC h;
  EffectiveChannel eff;
  double sigma2_eve;
};

// Random AN-dominant instances: modest information fraction keeps the dual
// variable of the distortionless constraint nonnegative, which is the regime
// the closed form certifies.
Instance random_instance(Rng& rng, int antennas) {
  Instance ins;
  SystemConfig cfg;
  cfg.antennas = antennas;
  cfg.power_w = 1.0;
  cfg.alpha = 0.05 + 0.30 * rng.uniform();
  cfg.pl_ref_db = 0.0;
  cfg.pl_exponent = 0.0;
  cfg.noise_bob_dbm = 0.0;
  ins.sigma2_eve = std::pow(10.0, -4.0 + 3.0 * rng.uniform());
  cfg.noise_eve_dbm = watt_to_dbm(ins.sigma2_eve);
  ins.ch = sample_channel(cfg, rng);
  ins.scheme = make_transmit_scheme(ins.ch.h_bob, cfg.power_w, cfg.alpha);
  ins.u_bar = random_unitary(rng);
  ins.h = effective_channel_matrix(ins.ch.h_eve, ins.scheme, ins.u_bar);
  ins.eff = effective_channel(ins.h, signal_covariance_exact(ins.h));
  return ins;
}

struct Tally {
  int failures = 0;
  double worst = 0.0;
};

std::string detail_of(const Tally& t, int total) {
  std::ostringstream os;
  os << t.failures << "/" << total << " violations, worst=" << t.worst;
  return os.str();
}

}  // namespace

Mat2C random_unitary(Rng& rng) {
  Mat2C m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = rng.cgaussian();
  Eigen::HouseholderQR<Mat2C> qr(m);
  Mat2C q = qr.householderQ();
  return q;
}

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  std::vector<CheckResult> results;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
  };
  Rng rng(seed);

  {  // Beamformer and null-space structure.
    Tally t;
    const int n = 200;
    for (int i = 0; i < n; ++i) {
      Rng r = rng.split(1000 + i);
      SystemConfig cfg;
      cfg.antennas = 4 + static_cast<int>(r.uniform() * 12);
      const ChannelRealization ch = sample_channel(cfg, r);
      const TransmitScheme s = make_transmit_scheme(ch.h_bob, 1.0, 0.5);
      const int m = cfg.antennas;
      double err = std::abs(s.w.norm() - 1.0);
      err = std::max(err, (ch.h_bob * s.w_perp).norm());
      err = std::max(err, (s.w_perp.adjoint() * s.w_perp - MatC::Identity(m - 1, m - 1)).norm());
      MatC full(m, m);
      full.col(0) = s.w;
      full.rightCols(m - 1) = s.w_perp;
      err = std::max(err, (full.adjoint() * full - MatC::Identity(m, m)).norm());
      t.worst = std::max(t.worst, err);
      if (err > 1e-10) ++t.failures;
    }
    add("beamformer and null-space orthonormality", t.failures == 0, detail_of(t, n));
  }

  {  // Artificial-noise invisibility and power budget.
    Rng r = rng.split(2000);
    SystemConfig cfg;
    cfg.antennas = 10;
    const ChannelRealization ch = sample_channel(cfg, r);
    const TransmitScheme s = make_transmit_scheme(ch.h_bob, cfg.power_w, 0.4);
    const int n = 100000;
    const SymbolBlock b = generate_block(s, n, r);
    const double leak = (ch.h_bob * s.w_perp * b.a).norm();
    const bool leak_ok = leak <= 1e-8 * b.a.norm();
    const double mean_power = b.s.squaredNorm() / n;
    const bool power_ok = std::abs(mean_power - cfg.power_w) <= 0.02 * cfg.power_w;
    std::ostringstream os;
    os << "leak=" << leak << " mean_col_power=" << mean_power << " target=" << cfg.power_w;
    add("artificial noise invisible at Bob", leak_ok, os.str());
    add("transmit power budget within 2%", power_ok, os.str());
  }

  {  // Whitening identity and projector bound.
    Tally tw, tq;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
      Rng r = rng.split(3000 + i);
      const Instance ins = random_instance(r, 6);
      const Mat2C r_s = signal_covariance_exact(ins.h);
      const Mat2C q = whitener(r_s);
      const double werr = (q * r_s * q.adjoint() - Mat2C::Identity()).norm();
      tw.worst = std::max(tw.worst, werr);
      if (werr > 1e-9) ++tw.failures;
      const double qn = (q * ins.h.col(0)).squaredNorm();
      tq.worst = std::max(tq.worst, qn);
      if (qn > 1.0 + 1e-9) ++tq.failures;
    }
    add("whitening identity", tw.failures == 0, detail_of(tw, n));
    add("whitened signal direction norm bounded by 1", tq.failures == 0, detail_of(tq, n));
  }

  {  // KKT certificate of the closed-form filter.
    Tally ts, tc, tl, th;
    const int n = 500;
    for (int i = 0; i < n; ++i) {
      Rng r = rng.split(4000 + i);
      const Instance ins = random_instance(r, 8);
      const OgmFilterSolution sol =
          solve_z_star(ins.h, ins.eff.u, ins.eff.sigma, ins.sigma2_eve);
      Vec2C b = ins.eff.u.adjoint() * ins.h.col(0);
      b(0) /= std::sqrt(ins.eff.sigma(0));
      b(1) /= std::sqrt(ins.eff.sigma(1));
      Mat2C g = Mat2C::Zero();
      g(0, 0) = 1.0 + ins.sigma2_eve / ins.eff.sigma(0);
      g(1, 1) = 1.0 + ins.sigma2_eve / ins.eff.sigma(1);
      const Mat2C t_mat = b * b.adjoint();
      const Mat2C stat =
          t_mat * sol.z_star * g - (sol.lambda_star + 2.0) * t_mat;
      const double stat_res = stat.norm() / std::max(1.0, t_mat.norm());
      ts.worst = std::max(ts.worst, stat_res);
      if (stat_res > 1e-5) ++ts.failures;
      const double cval = std::real((b.adjoint() * sol.z_star.adjoint() * b)(0, 0)) - 1.0;
      const double slack = std::abs(sol.lambda_star * cval);
      tc.worst = std::max(tc.worst, std::max(slack, std::abs(cval)));
      if (slack > 1e-6 || std::abs(cval) > 1e-8) ++tc.failures;
      // The dual variable is nonnegative exactly when the whitened signal
      // direction carries at most half of the shaped energy; its closed form
      // is 1/t - 2 with t the constraint value of the scaled-inverse filter.
      const Mat2C w_inv = g.inverse();
      const double t_energy = std::real((b.adjoint() * w_inv * b)(0, 0));
      const double lam_err = std::abs(sol.lambda_star - (1.0 / t_energy - 2.0));
      const bool sign_ok = (t_energy <= 0.5 + 1e-12) == (sol.lambda_star >= -1e-10);
      tl.worst = std::max(tl.worst, lam_err);
      if (lam_err > 1e-9 * std::max(1.0, std::abs(sol.lambda_star)) || !sign_ok) ++tl.failures;
      const double herr = (sol.z_star - Mat2C(sol.z_star.adjoint())).norm();
      const EigenSystem2 es = sorted_eigensystem(sol.z_star);
      const double minev = es.sigma(1);
      th.worst = std::max(th.worst, std::max(herr, -minev));
      if (herr > 1e-9 || minev < -1e-9) ++th.failures;
    }
    add("KKT stationarity residual below 1e-5", ts.failures == 0, detail_of(ts, n));
    add("distortionless constraint and complementary slackness", tc.failures == 0,
        detail_of(tc, n));
    add("dual variable matches closed form and sign threshold", tl.failures == 0,
        detail_of(tl, n));
    add("filter factor Hermitian PSD", th.failures == 0, detail_of(th, n));
  }

  {  // Filter direction equals the regularized-inverse row.
    Tally t;
    const int n = 500;
    for (int i = 0; i < n; ++i) {
      Rng r = rng.split(5000 + i);
      const Instance ins = random_instance(r, 6);
      const OgmFilterSolution sol =
          solve_z_star(ins.h, ins.eff.u, ins.eff.sigma, ins.sigma2_eve);
      const Mat2C m =
          signal_covariance_exact(ins.h) + ins.sigma2_eve * Mat2C::Identity();
      const Row2C mmse = ins.h.col(0).adjoint() * m.inverse();
      const cd inner = (sol.filter_row * mmse.adjoint())(0, 0);
      const double cosine =
          std::abs(inner) / (sol.filter_row.norm() * mmse.norm());
      const double err = std::max(1.0 - cosine, std::abs(std::arg(inner)));
      t.worst = std::max(t.worst, err);
      if (err > 1e-9) ++t.failures;
    }
    add("filter row is a positive multiple of the regularized-inverse row", t.failures == 0,
        detail_of(t, n));
  }

  {  // Output SINR: matrix form vs scalar expansion.
    Tally t;
    const int n = 2000;
    for (int i = 0; i < n; ++i) {
      Rng r = rng.split(6000 + i);
      const Instance ins = random_instance(r, 4 + static_cast<int>(r.uniform() * 8));
      const double sm = sinr_ogm_matrix_form(ins.h, ins.sigma2_eve);
      const SinrComponents comp =
          sinr_components(ins.ch.h_eve, ins.scheme.w, ins.scheme.w_perp, ins.u_bar);
      const double ss = sinr_ogm_scalar_form(comp, ins.scheme.sigma2_x, ins.scheme.sigma2_a,
                                             ins.sigma2_eve);
      const double rel = std::abs(sm - ss) / std::max(sm, ss);
      t.worst = std::max(t.worst, rel);
      if (rel > 1e-8) ++t.failures;
    }
    add("SINR matrix form matches scalar expansion", t.failures == 0, detail_of(t, n));
  }

  {  // Rate nonnegativity and bound ordering.
    Tally tn, tb;
    const int n = 2000;
    for (int i = 0; i < n; ++i) {
      Rng r = rng.split(7000 + i);
      SystemConfig cfg;
      cfg.antennas = 4 + static_cast<int>(r.uniform() * 12);
      cfg.alpha = 0.02 + 0.96 * r.uniform();
      cfg.pl_ref_db = 0.0;
      cfg.pl_exponent = 0.0;
      cfg.noise_bob_dbm = watt_to_dbm(cfg.power_w / 1000.0);
      cfg.noise_eve_dbm = cfg.noise_bob_dbm;
      const ChannelRealization ch = sample_channel(cfg, r);
      const SecrecyReport rep = secrecy_rate(cfg, ch, random_unitary(r), ch.sigma2_eve);
      const double least = std::min({rep.rate_bob, rep.rate_eve, rep.rate_eve_upper,
                                     rep.cs_minus, rep.cs_plus, rep.masr});
      tn.worst = std::min(tn.worst, least);
      if (least < 0.0) ++tn.failures;
      const double gap = rep.rate_eve_upper - rep.rate_eve;
      tb.worst = std::min(tb.worst, gap);
      if (gap < -1e-9) ++tb.failures;
    }
    add("reported rates nonnegative", tn.failures == 0, detail_of(tn, n));
    add("combiner upper bound dominates noisy combiner rate", tb.failures == 0,
        detail_of(tb, n));
  }

  return results;
}

}  // namespace wiretap
