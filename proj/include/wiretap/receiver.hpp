#pragma once

#include "wiretap/rng.hpp"
#include "wiretap/transmit.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

// Effective two-stream channel seen by the eavesdropper after its unitary
// input transform: column 1 carries the information symbols, columns 2..M the
// artificial noise, with the transmit powers absorbed into the matrix.
struct EffectiveChannel {
  MatC h;       // 2 x M
  Mat2C u;      // eigenvectors of the signal covariance (columns)
  Vec2 sigma;   // eigenvalues, sorted descending
  Vec2C h_col1;
};

struct EigenSystem2 {
  Mat2C u;
  Vec2 sigma;
};

// Hermitian eigendecomposition with a reproducible convention: eigenvalues
// descending, each eigenvector's largest-magnitude component real positive.
EigenSystem2 sorted_eigensystem(const Mat2C& hermitian);

MatC effective_channel_matrix(const MatC& h_eve, const TransmitScheme& scheme,
                              const Mat2C& u_bar);

// Builds the full effective-channel description from an explicit signal
// covariance (exact h h^H or an empirical estimate).
EffectiveChannel effective_channel(const MatC& h, const Mat2C& r_s);

MatC received_block(const MatC& h_eve, const TransmitScheme& scheme, const SymbolBlock& block,
                    double sigma2_eve, Rng& rng);

MatC apply_transform(const MatC& y_eve, const Mat2C& u_bar);

// Sample covariance of the transformed block minus the noise floor, clamped
// to the PSD cone.
Mat2C denoised_covariance_empirical(const MatC& y_bar, double sigma2_eve);

Mat2C signal_covariance_exact(const MatC& h);

// Eigenvalue-ratio rank test: true when the covariance is effectively rank 2,
// i.e. artificial noise is present and the optimal filter applies.
bool an_presence_test(const Mat2C& r_s, double threshold);

// Whitening transform q with q r_s q^H = I. Throws on rank deficiency.
Mat2C whitener(const Mat2C& r_s);

// Quadratic filter objective: the normalized estimation error achieved by a
// filter factor z in whitened coordinates, given the whitened signal
// direction b and the diagonal noise-shaping matrix g = I + sigma2 Sigma^-1.
double nmse_objective(const Mat2C& z, const Vec2C& b, const Mat2C& g);

// Closed-form dual variable of the distortionless constraint.
double solve_lambda_star(const MatC& h, const Mat2C& u, const Vec2& sigma, double sigma2_eve);

struct OgmFilterSolution {
  Mat2C z_star;        // Hermitian PSD filter factor (normalized form)
  double lambda_star;
  double mu_star;      // 0 at the optimum
  Mat2C psi_star;      // 0 at the optimum
  Row2C filter_row;    // applied to the transformed block
  double nmse;
};

OgmFilterSolution solve_z_star(const MatC& h, const Mat2C& u, const Vec2& sigma,
                               double sigma2_eve);

struct OracleResult {
  Mat2C z;
  double nmse;
  bool converged;
};

// Projected-gradient reference solver for the filter objective over
// {z Hermitian PSD, b^H z b = 1}, from multiple random starts. Used only to
// validate the closed form.
OracleResult numerical_oracle_solver(const MatC& h, const Mat2C& u, const Vec2& sigma,
                                     double sigma2_eve, Rng& rng, int starts = 8,
                                     int max_iters = 4000);

RowC estimate_symbols(const MatC& y_bar, const OgmFilterSolution& solution);

}  // namespace wiretap
