#include "wiretap/receiver.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace wiretap {

namespace {

constexpr double kRankEps = 1e-12;

void fix_phase(Mat2C& u) {
  for (int c = 0; c < 2; ++c) {
    int imax = std::abs(u(0, c)) >= std::abs(u(1, c)) ? 0 : 1;
    const cd v = u(imax, c);
    const double a = std::abs(v);
    if (a > 0.0) u.col(c) *= std::conj(v) / a;
  }
}

Mat2C diag_shaping(const Vec2& sigma, double sigma2_eve) {
  Mat2C g = Mat2C::Zero();
  g(0, 0) = 1.0 + sigma2_eve / sigma(0);
  g(1, 1) = 1.0 + sigma2_eve / sigma(1);
  return g;
}

Vec2C whitened_direction(const MatC& h, const Mat2C& u, const Vec2& sigma) {
  if (!(sigma(0) > 0.0) || !(sigma(1) > 0.0))
    throw std::runtime_error("degenerate whitening: covariance is rank deficient");
  Vec2C b = u.adjoint() * h.col(0);
  b(0) /= std::sqrt(sigma(0));
  b(1) /= std::sqrt(sigma(1));
  return b;
}

// Inverse of the diagonal shaping matrix, i.e. [I + sigma2 Sigma^-1]^-1.
Mat2C shaping_inverse(const Vec2& sigma, double sigma2_eve) {
  Mat2C w = Mat2C::Zero();
  w(0, 0) = sigma(0) / (sigma(0) + sigma2_eve);
  w(1, 1) = sigma(1) / (sigma(1) + sigma2_eve);
  return w;
}

Mat2C direction_null_projector(const Vec2C& b) {
  const double n2 = b.squaredNorm();
  return Mat2C::Identity() - (b * b.adjoint()) / n2;
}

Row2C row_from_z(const Vec2C& b, const Mat2C& z, const Mat2C& u, const Vec2& sigma) {
  Row2C scaled = (b.adjoint() * z);
  scaled(0) /= std::sqrt(sigma(0));
  scaled(1) /= std::sqrt(sigma(1));
  return scaled * u.adjoint();
}

}  // namespace

EigenSystem2 sorted_eigensystem(const Mat2C& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat2C> es(hermitian);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  EigenSystem2 r;
  // Eigen returns ascending order; flip to descending.
  r.sigma << es.eigenvalues()(1), es.eigenvalues()(0);
  r.u.col(0) = es.eigenvectors().col(1);
  r.u.col(1) = es.eigenvectors().col(0);
  fix_phase(r.u);
  return r;
}

MatC effective_channel_matrix(const MatC& h_eve, const TransmitScheme& scheme,
                              const Mat2C& u_bar) {
  const int m = static_cast<int>(h_eve.cols());
  MatC h(2, m);
  h.col(0) = std::sqrt(scheme.sigma2_x) * (u_bar * h_eve * scheme.w);
  h.rightCols(m - 1) = std::sqrt(scheme.sigma2_a) * (u_bar * h_eve * scheme.w_perp);
  return h;
}

EffectiveChannel effective_channel(const MatC& h, const Mat2C& r_s) {
  EffectiveChannel e;
  e.h = h;
  e.h_col1 = h.col(0);
  const EigenSystem2 es = sorted_eigensystem(r_s);
  e.u = es.u;
  e.sigma = es.sigma;
  return e;
}

MatC received_block(const MatC& h_eve, const TransmitScheme& scheme, const SymbolBlock& block,
                    double sigma2_eve, Rng& rng) {
  const int n = static_cast<int>(block.x.cols());
  MatC y = h_eve * scheme.w * block.x + h_eve * scheme.w_perp * block.a;
  const double s = std::sqrt(sigma2_eve);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < n; ++j) y(i, j) += s * rng.cgaussian();
  return y;
}

MatC apply_transform(const MatC& y_eve, const Mat2C& u_bar) {
  if ((u_bar.adjoint() * u_bar - Mat2C::Identity()).norm() > 1e-9)
    throw std::invalid_argument("transform matrix is not unitary");
  return u_bar * y_eve;
}

Mat2C denoised_covariance_empirical(const MatC& y_bar, double sigma2_eve) {
  const int n = static_cast<int>(y_bar.cols());
  if (n < 2) throw std::domain_error("need at least 2 samples");
  Mat2C r = (y_bar * y_bar.adjoint()) / static_cast<double>(n);
  r -= sigma2_eve * Mat2C::Identity();
  EigenSystem2 es = sorted_eigensystem(r);
  es.sigma(0) = std::max(es.sigma(0), 0.0);
  es.sigma(1) = std::max(es.sigma(1), 0.0);
  return es.u * es.sigma.cast<cd>().asDiagonal() * es.u.adjoint();
}

Mat2C signal_covariance_exact(const MatC& h) { return h * h.adjoint(); }

bool an_presence_test(const Mat2C& r_s, double threshold) {
  const EigenSystem2 es = sorted_eigensystem(r_s);
  if (!(es.sigma(0) > 0.0)) return false;
  return es.sigma(1) / es.sigma(0) > threshold;
}

Mat2C whitener(const Mat2C& r_s) {
  const EigenSystem2 es = sorted_eigensystem(r_s);
  const double floor = kRankEps * (es.sigma(0) + es.sigma(1));
  if (!(es.sigma(0) > floor) || !(es.sigma(1) > floor))
    throw std::runtime_error("degenerate whitening: covariance is rank deficient");
  Mat2C q = es.u.adjoint();
  q.row(0) /= std::sqrt(es.sigma(0));
  q.row(1) /= std::sqrt(es.sigma(1));
  return q;
}

double nmse_objective(const Mat2C& z, const Vec2C& b, const Mat2C& g) {
  const cd quad = (b.adjoint() * z * g * z.adjoint() * b)(0, 0);
  const cd lin = (b.adjoint() * z.adjoint() * b)(0, 0);
  return std::real(quad) - 2.0 * std::real(lin) + 1.0;
}

double solve_lambda_star(const MatC& h, const Mat2C& u, const Vec2& sigma, double sigma2_eve) {
  const Vec2C b = whitened_direction(h, u, sigma);
  const Mat2C gamma = direction_null_projector(b);
  const Mat2C w = shaping_inverse(sigma, sigma2_eve);
  const cd num = 1.0 - (b.adjoint() * gamma * (b * b.adjoint()) * w * b)(0, 0);
  const cd den = (b.adjoint() * w * b)(0, 0);
  return std::real(num) / std::real(den) - 2.0;
}

OgmFilterSolution solve_z_star(const MatC& h, const Mat2C& u, const Vec2& sigma,
                               double sigma2_eve) {
  const Vec2C b = whitened_direction(h, u, sigma);
  const Mat2C w = shaping_inverse(sigma, sigma2_eve);
  const Mat2C g = diag_shaping(sigma, sigma2_eve);
  OgmFilterSolution sol;
  sol.lambda_star = solve_lambda_star(h, u, sigma, sigma2_eve);
  sol.mu_star = 0.0;
  sol.psi_star = Mat2C::Zero();
  // Normalized form of the optimum; the projector term of the general closed
  // form acts in the null space of b and does not change the applied filter,
  // so the normalized form is kept as the canonical (Hermitian PSD) solution.
  const double t = std::real((b.adjoint() * w * b)(0, 0));
  sol.z_star = w / t;
  sol.filter_row = row_from_z(b, sol.z_star, u, sigma);
  sol.nmse = nmse_objective(sol.z_star, b, g);
  return sol;
}

OracleResult numerical_oracle_solver(const MatC& h, const Mat2C& u, const Vec2& sigma,
                                     double sigma2_eve, Rng& rng, int starts, int max_iters) {
  const Vec2C b = whitened_direction(h, u, sigma);
  const Mat2C g = diag_shaping(sigma, sigma2_eve);
  const Mat2C t_mat = b * b.adjoint();

  auto project = [&](Mat2C z) -> Mat2C {
    z = (z + Mat2C(z.adjoint())) / 2.0;
    EigenSystem2 es = sorted_eigensystem(z);
    es.sigma(0) = std::max(es.sigma(0), 0.0);
    es.sigma(1) = std::max(es.sigma(1), 0.0);
    z = es.u * es.sigma.cast<cd>().asDiagonal() * es.u.adjoint();
    const double c = std::real((b.adjoint() * z * b)(0, 0));
    if (!(c > 1e-14)) return Mat2C::Identity() / std::real(t_mat.trace());
    return z / c;
  };

  OracleResult best;
  best.nmse = std::numeric_limits<double>::infinity();
  best.converged = false;
  for (int s = 0; s < starts; ++s) {
    Mat2C z;
    if (s == 0) {
      z = project(Mat2C::Identity());
    } else {
      Mat2C x;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) x(i, j) = rng.cgaussian();
      z = project(x * x.adjoint());
    }
    double f = nmse_objective(z, b, g);
    double step = 0.5 / (1.0 + g.real().trace() * std::real(t_mat.trace()));
    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
      const Mat2C grad = t_mat * z * g + g * z * t_mat - 2.0 * t_mat;
      Mat2C z_new = project(z - step * grad);
      double f_new = nmse_objective(z_new, b, g);
      int back = 0;
      while (f_new > f && back < 40) {
        step *= 0.5;
        z_new = project(z - step * grad);
        f_new = nmse_objective(z_new, b, g);
        ++back;
      }
      const double delta = f - f_new;
      z = z_new;
      f = f_new;
      if (delta >= 0.0 && delta < 1e-14 && (z - project(z - grad * 1e-6)).norm() < 1e-9) {
        converged = true;
        break;
      }
      if (back < 3) step *= 1.5;
    }
    if (f < best.nmse) {
      best.nmse = f;
      best.z = z;
      best.converged = converged;
    }
  }
  return best;
}

RowC estimate_symbols(const MatC& y_bar, const OgmFilterSolution& solution) {
  return solution.filter_row * y_bar;
}

}  // namespace wiretap
