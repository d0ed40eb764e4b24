#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wiretap/rng.hpp"
#include "wiretap/types.hpp"

namespace wiretap {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Haar-ish random 2x2 unitary (QR of a complex Gaussian matrix).
Mat2C random_unitary(Rng& rng);

// Structural invariant battery: whitening identity, projector bound,
// artificial-noise invisibility at the legitimate receiver, power budget,
// rate nonnegativity, bound ordering, SINR identity, KKT certificate.
std::vector<CheckResult> run_selftest(std::uint64_t seed = 7);

}  // namespace wiretap
