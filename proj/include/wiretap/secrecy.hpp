#pragma once

#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/transmit.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

// Scalar invariants of the eavesdropper's interference geometry. h1/h2 are
// the transformed information-channel entries, h3/h4 the transformed
// artificial-noise channel rows; a..d are the quadratic forms the closed-form
// output SINR is built from.
struct SinrComponents {
  cd h1;
  cd h2;
  RowC h3;
  RowC h4;
  double a;
  double b;
  double c;
  double d;
};

SinrComponents sinr_components(const MatC& h_eve, const VecC& w, const MatC& w_perp,
                               const Mat2C& u_bar);

struct SinrTerms {
  double psi1;
  double psi2;
  double psi3;
};

SinrTerms sinr_terms(const SinrComponents& comp, double sigma2_x, double sigma2_a,
                     double sigma2_eve);

// Output SINR of the optimal filter from the effective channel matrix.
double sinr_ogm_matrix_form(const MatC& h, double sigma2_eve);

// Same quantity from the scalar expansion; agrees with the matrix form to
// floating-point accuracy.
double sinr_ogm_scalar_form(const SinrComponents& comp, double sigma2_x, double sigma2_a,
                            double sigma2_eve);

// Limit of sinr * sigma2_eve / sigma2_x as the eavesdropper noise vanishes.
double noiseless_sinr_slope(const SinrComponents& comp);

double rate_bob(double sigma2_x, double sigma2_bob, const RowC& h_bob);

enum class EveCacMode { kNoisy, kUpper };

// Capacity-achieving-combiner rate at the eavesdropper, treating the
// artificial noise as colored Gaussian interference. For kNoisy the powers
// must be expressed relative to the eavesdropper noise power (unit noise).
double rate_eve_cac(const MatC& h_eve, const VecC& w, const MatC& w_perp, double sigma2_x,
                    double sigma2_a, EveCacMode mode);

enum class SecrecyBranch { kInterior, kBoundary };

struct SecrecyReport {
  double rate_bob = 0.0;
  double rate_eve = 0.0;
  double rate_eve_upper = 0.0;
  double sinr_eve = 0.0;
  double cs_minus = 0.0;
  double cs_plus = 0.0;
  double masr = 0.0;
  double alpha_star = 0.0;
  SecrecyBranch branch = SecrecyBranch::kInterior;
};

// Secrecy rate of the scheme at the configured power split, against an
// optimal-filter eavesdropper (interior split) or a combiner eavesdropper
// (boundary split).
SecrecyReport secrecy_rate(const SystemConfig& config, const ChannelRealization& ch,
                           const Mat2C& u_bar, double sigma2_eve);

std::vector<double> uniform_alpha_grid(int points);

// Maximum achievable secrecy rate over the power-split grid.
SecrecyReport masr(const SystemConfig& config, const ChannelRealization& ch, const Mat2C& u_bar,
                   double sigma2_eve, const std::vector<double>& alpha_grid);

// Sufficient conditions under which the eavesdropper forces the secrecy rate
// to zero at high SNR: monotonicity cases of the inner rate ratio plus the
// boundary condition at full information power. zero_rate combines the
// constant-case power bound with the boundary condition and certifies a zero
// rate for every transmit power in the high-SNR regime.
struct AvrFlags {
  bool increasing_case = false;
  bool decreasing_case = false;
  bool constant_case = false;
  bool boundary_ok = false;
  bool zero_rate = false;
};

AvrFlags avr_conditions(const SinrComponents& comp, double sigma2_eve, double sigma2_bob,
                        const RowC& h_bob, const MatC& h_eve);

struct AvrPoint {
  double x;
  double y;
  double z;
  AvrFlags flags;
  bool verdict;      // brute-force power-split sweep stayed below the zero tolerance
  double masr_rate;  // value of that sweep's maximum
};

struct AvrScan {
  std::vector<AvrPoint> points;
};

AvrScan avr_scan(const ChannelRealization& ch, const Mat2C& u_bar, const SystemConfig& config,
                 const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::vector<double>& zs);

constexpr double kZeroRateTolAnalytic = 1e-6;
constexpr double kZeroRateTolMonteCarlo = 1e-3;

}  // namespace wiretap
