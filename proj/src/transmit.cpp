#include "wiretap/transmit.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Householder>

namespace wiretap {

std::pair<double, double> power_split(double power_w, double alpha, int antennas) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must be in [0, 1]");
  if (antennas < 2) throw std::domain_error("antennas must be >= 2");
  if (!(power_w > 0.0)) throw std::domain_error("power must be positive");
  return {alpha * power_w, (1.0 - alpha) * power_w / (antennas - 1)};
}

VecC mrt_beamformer(const RowC& h_bob) {
  const double nrm = h_bob.norm();
  if (!(nrm > 0.0)) throw std::runtime_error("degenerate channel: h_bob is zero");
  return h_bob.adjoint() / nrm;
}

MatC null_space_basis(const RowC& h_bob) {
  const int m = static_cast<int>(h_bob.cols());
  if (m < 2) throw std::domain_error("need at least 2 antennas");
  const double nrm = h_bob.norm();
  if (!(nrm > 0.0)) throw std::runtime_error("degenerate channel: h_bob is zero");
  // Unitary completion of the beamforming direction via a Householder QR of
  // the single column h_bob^H; columns 2..M span the orthogonal complement.
  MatC col = h_bob.adjoint() / nrm;
  Eigen::HouseholderQR<MatC> qr(col);
  MatC q = qr.householderQ() * MatC::Identity(m, m);
  // Columns 2..M are orthonormal and orthogonal to h_bob^H.
  return q.rightCols(m - 1);
}

TransmitScheme make_transmit_scheme(const RowC& h_bob, double power_w, double alpha) {
  TransmitScheme t;
  t.w = mrt_beamformer(h_bob);
  t.w_perp = null_space_basis(h_bob);
  std::tie(t.sigma2_x, t.sigma2_a) = power_split(power_w, alpha, static_cast<int>(h_bob.cols()));
  return t;
}

SymbolBlock generate_block(const TransmitScheme& scheme, int n, Rng& rng) {
  if (n < 1) throw std::domain_error("block length must be >= 1");
  const int m = static_cast<int>(scheme.w.rows());
  SymbolBlock b;
  b.x = RowC(n);
  const double sx = std::sqrt(scheme.sigma2_x);
  for (int j = 0; j < n; ++j) b.x(j) = sx * rng.cgaussian();
  b.a = MatC(m - 1, n);
  const double sa = std::sqrt(scheme.sigma2_a);
  for (int i = 0; i < m - 1; ++i)
    for (int j = 0; j < n; ++j) b.a(i, j) = sa * rng.cgaussian();
  b.s = scheme.w * b.x + scheme.w_perp * b.a;
  return b;
}

}  // namespace wiretap
