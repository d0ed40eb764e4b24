#include <doctest.h>

#include <cmath>

#include "wiretap/transmit.hpp"

using namespace wiretap;

TEST_CASE("power split allocates the information and noise fractions") {
  auto [sx, sa] = power_split(1.0, 0.5, 3);
  CHECK(sx == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sa == doctest::Approx(0.25).epsilon(1e-15));

  auto [sx1, sa1] = power_split(2.0, 1.0, 5);
  CHECK(sx1 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sa1 == doctest::Approx(0.0));

  auto [sx0, sa0] = power_split(2.0, 0.0, 5);
  CHECK(sx0 == doctest::Approx(0.0));
  CHECK(sa0 == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(power_split(1.0, -0.1, 4), std::domain_error);
  CHECK_THROWS_AS(power_split(1.0, 1.1, 4), std::domain_error);
  CHECK_THROWS_AS(power_split(-1.0, 0.5, 4), std::domain_error);
}

TEST_CASE("total power is conserved by the split") {
  for (double alpha : {0.0, 0.13, 0.5, 0.87, 1.0}) {
    for (int m : {3, 4, 10, 64}) {
      auto [sx, sa] = power_split(3.7, alpha, m);
      CHECK(sx + (m - 1) * sa == doctest::Approx(3.7).epsilon(1e-12));
    }
  }
}

TEST_CASE("beamformer matches the legitimate channel direction") {
  RowC h1(3);
  h1 << cd(1, 0), cd(0, 0), cd(0, 0);
  const VecC w1 = mrt_beamformer(h1);
  CHECK((w1 - (VecC(3) << cd(1, 0), cd(0, 0), cd(0, 0)).finished()).norm() < 1e-15);

  RowC h2(3);
  h2 << cd(0, 1), cd(0, 0), cd(0, 0);
  const VecC w2 = mrt_beamformer(h2);
  CHECK((w2 - (VecC(3) << cd(0, -1), cd(0, 0), cd(0, 0)).finished()).norm() < 1e-15);
  CHECK(std::abs((h2 * w2)(0, 0) - cd(1, 0)) < 1e-15);

  CHECK_THROWS_AS(mrt_beamformer(RowC::Zero(4)), std::runtime_error);
}

TEST_CASE("beamformer yields a real positive full-norm inner product") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Rng r = rng.split(i);
    RowC h(8);
    for (int j = 0; j < 8; ++j) h(j) = r.cgaussian();
    const VecC w = mrt_beamformer(h);
    CHECK(std::abs(w.norm() - 1.0) < 1e-12);
    const cd g = (h * w)(0, 0);
    CHECK(std::abs(g.imag()) < 1e-12);
    CHECK(g.real() == doctest::Approx(h.norm()).epsilon(1e-12));
  }
}

TEST_CASE("null-space basis is orthonormal and invisible to the channel") {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    Rng r = rng.split(i);
    const int m = 3 + static_cast<int>(r.uniform() * 14);
    RowC h(m);
    for (int j = 0; j < m; ++j) h(j) = r.cgaussian();
    const MatC wp = null_space_basis(h);
    REQUIRE(wp.rows() == m);
    REQUIRE(wp.cols() == m - 1);
    CHECK((h * wp).norm() < 1e-10 * h.norm());
    CHECK((wp.adjoint() * wp - MatC::Identity(m - 1, m - 1)).norm() < 1e-10);
    MatC full(m, m);
    full.col(0) = mrt_beamformer(h);
    full.rightCols(m - 1) = wp;
    CHECK((full.adjoint() * full - MatC::Identity(m, m)).norm() < 1e-10);
  }
}

TEST_CASE("degenerate power split keeps the block well defined") {
  RowC h(4);
  Rng rng(17);
  for (int j = 0; j < 4; ++j) h(j) = rng.cgaussian();

  const TransmitScheme all_info = make_transmit_scheme(h, 2.0, 1.0);
  Rng r1(5);
  const SymbolBlock b1 = generate_block(all_info, 64, r1);
  CHECK(b1.a.norm() == 0.0);
  CHECK((b1.s - all_info.w * b1.x).norm() < 1e-14 * b1.s.norm());

  const TransmitScheme all_noise = make_transmit_scheme(h, 2.0, 0.0);
  Rng r2(5);
  const SymbolBlock b2 = generate_block(all_noise, 64, r2);
  CHECK(b2.x.norm() == 0.0);
  CHECK(b2.s.norm() > 0.0);
}

TEST_CASE("legitimate receiver sees only the scaled information symbols") {
  Rng rng(23);
  RowC h(6);
  for (int j = 0; j < 6; ++j) h(j) = rng.cgaussian();
  const TransmitScheme s = make_transmit_scheme(h, 3.16227766016838, 0.4);
  const SymbolBlock b = generate_block(s, 500, rng);
  const RowC rx = h * b.s;
  CHECK((rx - h.norm() * b.x).norm() < 1e-10 * rx.norm());
}

TEST_CASE("transmit covariance matches the design within 2 percent") {
  Rng rng(31);
  RowC h(5);
  for (int j = 0; j < 5; ++j) h(j) = rng.cgaussian();
  const TransmitScheme s = make_transmit_scheme(h, 1.0, 0.3);
  const int n = 100000;
  const SymbolBlock b = generate_block(s, n, rng);
  const MatC cov = b.s * b.s.adjoint() / static_cast<double>(n);
  const MatC target = s.sigma2_x * s.w * s.w.adjoint() +
                      s.sigma2_a * s.w_perp * s.w_perp.adjoint();
  CHECK((cov - target).norm() < 0.02 * target.norm());
}
