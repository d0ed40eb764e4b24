#pragma once

#include <cstdint>
#include <random>

#include "wiretap/types.hpp"

namespace wiretap {

// Splittable seeded generator. Child streams derived from the same base seed
// are independent, so Monte Carlo trials can run on disjoint generators and
// still be reproducible. Gaussian variates are produced by an explicit
// Box-Muller transform on the raw mt19937_64 output, which keeps the byte
// sequence identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // New generator with an independent stream derived from the same base seed.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  double uniform();   // [0, 1)
  double gaussian();  // N(0, 1)
  cd cgaussian();     // CN(0, 1): real and imaginary parts N(0, 1/2)

  std::uint64_t base_seed() const { return base_; }

 private:
  std::uint64_t base_;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wiretap
