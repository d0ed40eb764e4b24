#include "wiretap/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wiretap/receiver.hpp"

namespace wiretap {

namespace {

double log2p(double snr) { return std::log2(1.0 + snr); }

double clip0(double v) { return v > 0.0 ? v : 0.0; }

// Inner quantities reused across a power-split sweep for one realization.
struct SweepContext {
  SinrComponents comp;
  double norm_hb2;   // ||h_bob||^2
  double norm_hew2;  // ||H_E w||^2
  double power;
  int antennas;
};

SweepContext make_context(const SystemConfig& config, const ChannelRealization& ch,
                          const Mat2C& u_bar) {
  SweepContext ctx;
  const VecC w = mrt_beamformer(ch.h_bob);
  const MatC w_perp = null_space_basis(ch.h_bob);
  ctx.comp = sinr_components(ch.h_eve, w, w_perp, u_bar);
  ctx.norm_hb2 = ch.h_bob.squaredNorm();
  ctx.norm_hew2 = (ch.h_eve * w).squaredNorm();
  ctx.power = config.power_w;
  ctx.antennas = config.antennas;
  return ctx;
}

double secrecy_at_alpha(const SweepContext& ctx, double alpha, double sigma2_bob,
                        double sigma2_eve) {
  if (alpha <= 0.0) return 0.0;
  const double sx2 = alpha * ctx.power;
  const double bob = log2p(sx2 * ctx.norm_hb2 / sigma2_bob);
  if (alpha >= 1.0) {
    return clip0(bob - log2p(sx2 * ctx.norm_hew2 / sigma2_eve));
  }
  const double sa2 = (1.0 - alpha) * ctx.power / (ctx.antennas - 1);
  const double sinr = sinr_ogm_scalar_form(ctx.comp, sx2, sa2, sigma2_eve);
  return clip0(bob - log2p(sinr));
}

}  // namespace

SinrComponents sinr_components(const MatC& h_eve, const VecC& w, const MatC& w_perp,
                               const Mat2C& u_bar) {
  if ((u_bar.adjoint() * u_bar - Mat2C::Identity()).norm() > 1e-9)
    throw std::invalid_argument("transform matrix is not unitary");
  SinrComponents s;
  const Vec2C g = u_bar * (h_eve * w);
  const MatC g2 = u_bar * (h_eve * w_perp);
  s.h1 = g(0);
  s.h2 = g(1);
  s.h3 = g2.row(0);
  s.h4 = g2.row(1);
  const double n3 = s.h3.squaredNorm();
  const double n4 = s.h4.squaredNorm();
  const cd ip = (s.h3 * s.h4.adjoint())(0, 0);  // <h4, h3>
  const double rh = std::real(std::conj(s.h1) * s.h2 * ip);
  const double m1 = std::norm(s.h1);
  const double m2 = std::norm(s.h2);
  s.a = m1 * n4 + m2 * n3 - 2.0 * rh;
  s.b = m1 + m2;
  s.c = n4 * n4 * m1 + n3 * n3 * m2 + std::norm(ip) * s.b - 2.0 * (n3 + n4) * rh;
  s.d = s.a;
  return s;
}

SinrTerms sinr_terms(const SinrComponents& comp, double sigma2_x, double sigma2_a,
                     double sigma2_eve) {
  SinrTerms t;
  t.psi1 = sigma2_x * sigma2_a * comp.a + sigma2_x * sigma2_eve * comp.b;
  t.psi2 = sigma2_x * sigma2_a * sigma2_a * comp.c;
  t.psi3 = sigma2_x * (sigma2_eve * sigma2_eve * comp.b +
                       2.0 * sigma2_a * sigma2_eve * comp.d);
  return t;
}

double sinr_ogm_matrix_form(const MatC& h, double sigma2_eve) {
  if (!(sigma2_eve > 0.0))
    throw std::domain_error("noiseless limit: use noiseless_sinr_slope");
  const Mat2C m = h * h.adjoint() + sigma2_eve * Mat2C::Identity();
  const Mat2C mi = m.inverse();
  const Vec2C h1 = h.col(0);
  const double p = std::real((h1.adjoint() * mi * h1)(0, 0));
  const double q = std::real((h1.adjoint() * mi * mi * h1)(0, 0));
  return p * p / (sigma2_eve * q);
}

double sinr_ogm_scalar_form(const SinrComponents& comp, double sigma2_x, double sigma2_a,
                            double sigma2_eve) {
  if (!(sigma2_eve > 0.0))
    throw std::domain_error("noiseless limit: use noiseless_sinr_slope");
  const SinrTerms t = sinr_terms(comp, sigma2_x, sigma2_a, sigma2_eve);
  const double den = sigma2_eve * (t.psi2 + t.psi3);
  if (!(den > 0.0)) throw std::domain_error("noiseless limit: use noiseless_sinr_slope");
  return t.psi1 * t.psi1 / den;
}

double noiseless_sinr_slope(const SinrComponents& comp) {
  if (!(comp.c > 0.0)) throw std::runtime_error("degenerate geometry: zero interference term");
  return comp.a * comp.a / comp.c;
}

double rate_bob(double sigma2_x, double sigma2_bob, const RowC& h_bob) {
  if (!(sigma2_bob > 0.0)) throw std::domain_error("sigma2_bob must be positive");
  return log2p(sigma2_x * h_bob.squaredNorm() / sigma2_bob);
}

double rate_eve_cac(const MatC& h_eve, const VecC& w, const MatC& w_perp, double sigma2_x,
                    double sigma2_a, EveCacMode mode) {
  const Vec2C g = h_eve * w;
  const MatC gp = h_eve * w_perp;
  const Mat2C k2 = gp * gp.adjoint();
  if (mode == EveCacMode::kNoisy) {
    const Mat2C k1 = sigma2_a * k2 + Mat2C::Identity();
    return log2p(sigma2_x * std::real((g.adjoint() * k1.inverse() * g)(0, 0)));
  }
  if (!(sigma2_a > 0.0)) throw std::domain_error("upper bound needs alpha in (0, 1)");
  const EigenSystem2 es = sorted_eigensystem(k2);
  if (!(es.sigma(1) > 1e-12 * es.sigma(0)))
    throw std::runtime_error("degenerate geometry: interference covariance is singular");
  return log2p(sigma2_x / sigma2_a * std::real((g.adjoint() * k2.inverse() * g)(0, 0)));
}

SecrecyReport secrecy_rate(const SystemConfig& config, const ChannelRealization& ch,
                           const Mat2C& u_bar, double sigma2_eve) {
  config.validate();
  const double alpha = config.alpha;
  const TransmitScheme scheme = make_transmit_scheme(ch.h_bob, config.power_w, alpha);
  SecrecyReport r;
  r.alpha_star = alpha;
  r.rate_bob = rate_bob(scheme.sigma2_x, ch.sigma2_bob, ch.h_bob);
  r.rate_eve = rate_eve_cac(ch.h_eve, scheme.w, scheme.w_perp, scheme.sigma2_x / sigma2_eve,
                            scheme.sigma2_a / sigma2_eve, EveCacMode::kNoisy);
  const double snr_plus = scheme.sigma2_x * (ch.h_eve * scheme.w).squaredNorm() / sigma2_eve;
  r.cs_plus = clip0(r.rate_bob - log2p(snr_plus));
  if (alpha > 0.0 && alpha < 1.0) {
    r.branch = SecrecyBranch::kInterior;
    const SinrComponents comp = sinr_components(ch.h_eve, scheme.w, scheme.w_perp, u_bar);
    r.sinr_eve = sinr_ogm_scalar_form(comp, scheme.sigma2_x, scheme.sigma2_a, sigma2_eve);
    r.cs_minus = clip0(r.rate_bob - log2p(r.sinr_eve));
    r.rate_eve_upper = rate_eve_cac(ch.h_eve, scheme.w, scheme.w_perp,
                                    scheme.sigma2_x / sigma2_eve,
                                    scheme.sigma2_a / sigma2_eve, EveCacMode::kUpper);
    r.masr = r.cs_minus;
  } else {
    r.branch = SecrecyBranch::kBoundary;
    r.sinr_eve = alpha >= 1.0 ? snr_plus : 0.0;
    r.cs_minus = 0.0;
    r.rate_eve_upper = r.rate_eve;
    r.masr = alpha >= 1.0 ? r.cs_plus : 0.0;
  }
  return r;
}

std::vector<double> uniform_alpha_grid(int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
  return g;
}

SecrecyReport masr(const SystemConfig& config, const ChannelRealization& ch, const Mat2C& u_bar,
                   double sigma2_eve, const std::vector<double>& alpha_grid) {
  if (alpha_grid.empty()) throw std::domain_error("alpha grid must be nonempty");
  const SweepContext ctx = make_context(config, ch, u_bar);
  double best_val = -1.0;
  double best_alpha = 0.0;
  for (const double a : alpha_grid) {
    const double v = secrecy_at_alpha(ctx, a, ch.sigma2_bob, sigma2_eve);
    if (v > best_val) {
      best_val = v;
      best_alpha = a;
    }
  }
  SystemConfig at_best = config;
  at_best.alpha = best_alpha;
  SecrecyReport r = secrecy_rate(at_best, ch, u_bar, sigma2_eve);
  r.masr = best_val;
  r.alpha_star = best_alpha;
  return r;
}

AvrFlags avr_conditions(const SinrComponents& comp, double sigma2_eve, double sigma2_bob,
                        const RowC& h_bob, const MatC& h_eve) {
  AvrFlags f;
  const double a = comp.a, b = comp.b, c = comp.c, d = comp.d;
  const VecC w = mrt_beamformer(h_bob);
  const double ratio_bound = (h_eve * w).squaredNorm() / h_bob.squaredNorm();
  f.boundary_ok = sigma2_eve / sigma2_bob < ratio_bound;
  if (a > 0.0 && c > 0.0) {
    const double lhs = sigma2_eve * (b * b / (a * a) - 2.0 * b / c);
    const double rhs = 2.0 * (b / a - d / c);
    const double ba = b / a;
    const double dc = d / c;
    f.increasing_case = (lhs <= rhs) && (ba < dc) && f.boundary_ok;
    f.decreasing_case = (lhs >= rhs) && (ba > dc);
    const double power_bound = a * a / (sigma2_eve * c);
    const bool power_ok = power_bound >= h_bob.squaredNorm() / sigma2_bob;
    f.constant_case = std::abs(ba - dc) <= 1e-9 * std::max(std::abs(ba), std::abs(dc)) && power_ok;
    f.zero_rate = power_ok && f.boundary_ok;
  }
  return f;
}

AvrScan avr_scan(const ChannelRealization& ch, const Mat2C& u_bar, const SystemConfig& config,
                 const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::vector<double>& zs) {
  AvrScan scan;
  const VecC w = mrt_beamformer(ch.h_bob);
  const MatC w_perp = null_space_basis(ch.h_bob);
  const SinrComponents comp = sinr_components(ch.h_eve, w, w_perp, u_bar);
  const std::vector<double> grid = uniform_alpha_grid(1001);
  for (const double z : zs) {
    for (const double y : ys) {
      for (const double x : xs) {
        const NoiseGeometry g = metrics_to_powers(x, y, z, config);
        AvrPoint p;
        p.x = x;
        p.y = y;
        p.z = z;
        p.flags = avr_conditions(comp, g.sigma2_eve, g.sigma2_bob, ch.h_bob, ch.h_eve);
        ChannelRealization ch_p = ch;
        ch_p.beta_bob = g.beta_bob;
        ch_p.beta_eve = g.beta_eve;
        ch_p.sigma2_bob = g.sigma2_bob;
        ch_p.sigma2_eve = g.sigma2_eve;
        SystemConfig cfg_p = config;
        cfg_p.dist_bob_m = g.dist_bob_m;
        const SecrecyReport r = masr(cfg_p, ch_p, u_bar, g.sigma2_eve, grid);
        p.masr_rate = r.masr;
        p.verdict = r.masr < kZeroRateTolMonteCarlo;
        scan.points.push_back(p);
      }
    }
  }
  return scan;
}

}  // namespace wiretap
