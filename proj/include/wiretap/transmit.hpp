#pragma once

#include <utility>

#include "wiretap/channel.hpp"
#include "wiretap/rng.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

// Maximum-ratio beamformer plus an orthonormal basis of the null space of the
// legitimate channel, carrying the artificial noise.
struct TransmitScheme {
  VecC w;        // M x 1, unit norm, h_bob * w real positive
  MatC w_perp;   // M x (M-1), orthonormal columns, h_bob * w_perp = 0
  double sigma2_x;  // information signal power
  double sigma2_a;  // artificial-noise power per null-space dimension
};

struct SymbolBlock {
  RowC x;  // 1 x N information symbols, CN(0, sigma2_x)
  MatC a;  // (M-1) x N artificial-noise symbols, CN(0, sigma2_a)
  MatC s;  // M x N transmitted matrix, s = w x + w_perp a
};

std::pair<double, double> power_split(double power_w, double alpha, int antennas);

VecC mrt_beamformer(const RowC& h_bob);
MatC null_space_basis(const RowC& h_bob);

TransmitScheme make_transmit_scheme(const RowC& h_bob, double power_w, double alpha);

SymbolBlock generate_block(const TransmitScheme& scheme, int n, Rng& rng);

}  // namespace wiretap
