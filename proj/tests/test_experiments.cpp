#include <gtest/gtest.h>

#include "cubesim/experiments.hpp"
#include "cubesim/reference_data.hpp"
#include "cubesim/sampling.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cubesim;

TEST(CubeIfm, ThreePaths) {
  const CubeIfmTrace tr = trace_optimal_cube_ifm(3);
  EXPECT_NEAR(tr.result.p_trigger, 0.0, 1e-12);
  EXPECT_NEAR(tr.result.p_inconclusive, 0.5, 1e-12);
  EXPECT_NEAR(tr.result.p_success, 0.5, 1e-12);
  EXPECT_NEAR(tr.result.bound_value, 0.5, 1e-12);
  EXPECT_TRUE(is_perfect_ifm(tr.result));
  EXPECT_LT(max_abs_difference(tr.inside.tensor(), reference::interferometer_cube_n3()), 1e-12);
  EXPECT_LT(max_abs_difference(tr.post_measurement.tensor(), reference::post_measurement_cube_n3()), 1e-12);
  EXPECT_LT(max_abs_difference(tr.output_with_bomb.tensor(), reference::bomb_output_cube_n3()), 1e-12);
  EXPECT_EQ(tr.support_ports, std::vector<int>{1});
  EXPECT_TRUE(tr.no_bomb_output_classical);
}

TEST(CubeIfm, ClosedFormForAllN) {
  // Post-measurement cube is sum_{n>=2} M_n/(N-1), so P_? = 1/(N-1).
  double previous = 1.0;
  for (int n = 3; n <= 12; ++n) {
    const CubeIfmTrace tr = trace_optimal_cube_ifm(n);
    CubeTensor expected(n);
    for (int p = 2; p <= n; ++p) expected(p, p, p) = 1.0 / (n - 1);
    EXPECT_LT(max_abs_difference(tr.post_measurement.tensor(), expected), 1e-10);
    EXPECT_NEAR(tr.result.p_trigger, 0.0, 1e-10);
    EXPECT_NEAR(tr.result.p_inconclusive, 1.0 / (n - 1), 1e-9);
    EXPECT_NEAR(tr.result.p_inconclusive, tr.result.bound_value, 1e-10);
    EXPECT_LT(tr.result.p_inconclusive, previous);
    EXPECT_TRUE(satisfies_invariants(tr.result));
    EXPECT_TRUE(is_perfect_ifm(tr.result));
    previous = tr.result.p_inconclusive;
  }
  const IFMResult r11 = run_cube_ifm(11);
  EXPECT_NEAR(r11.p_inconclusive, 0.1, 1e-10);
  EXPECT_NEAR(r11.p_success, 0.9, 1e-10);
  EXPECT_THROW(run_cube_ifm(2), InvalidArgument);
}

TEST(CubeIfm, NegativeSignGivesSameProbabilities) {
  for (int n = 3; n <= 6; ++n) {
    const IFMResult r = trace_optimal_cube_ifm(n, PhaseSign::negative).result;
    EXPECT_NEAR(r.p_inconclusive, 1.0 / (n - 1), 1e-9);
  }
}

TEST(CubeTradeoffBound, Values) {
  EXPECT_DOUBLE_EQ(cube_tradeoff_bound(0.0, 3), 0.5);
  EXPECT_DOUBLE_EQ(cube_tradeoff_bound(0.0, 2), 1.0);
  EXPECT_DOUBLE_EQ(cube_tradeoff_bound(1.0, 7), 0.0);
  EXPECT_THROW(cube_tradeoff_bound(0.5, 1), InvalidArgument);
  EXPECT_THROW(cube_tradeoff_bound(1.5, 3), InvalidArgument);
}

TEST(RegionScan, ShapeAndNesting) {
  const std::vector<int> ns = {2, 3, 4, 10};
  const auto rows = region_scan(ns, 101);
  ASSERT_EQ(rows.size(), 404u);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    EXPECT_DOUBLE_EQ(rows[k * 101].bound, 1.0 / (ns[k] - 1));
    for (std::size_t i = 1; i < 101; ++i) EXPECT_LE(rows[k * 101 + i].bound, rows[k * 101 + i - 1].bound);
  }
  for (std::size_t i = 0; i < 101; ++i) {
    const double p = rows[i].p_trigger;
    EXPECT_DOUBLE_EQ(rows[i].bound, (1 - p) * (1 - p));
    for (std::size_t k = 1; k < ns.size(); ++k) EXPECT_LE(rows[k * 101 + i].bound, rows[(k - 1) * 101 + i].bound);
  }
  EXPECT_THROW(region_scan({3}, 1), InvalidArgument);
}

TEST(Sorkin, InterferometerCubeMatchesSubsetOracle) {
  const HermitianCube c = trace_optimal_cube_ifm(3).inside;
  const MultiportMatrix t = assemble_multiport(3);
  const auto s = sorkin_intensities(c, t, 1);
  EXPECT_NEAR(s.i123, 1.0, 1e-12);
  EXPECT_NEAR(s.i23, 0.5, 1e-12);
  EXPECT_NEAR(s.i12, 0.25, 1e-12);
  EXPECT_NEAR(s.i13, 0.25, 1e-12);
  EXPECT_NEAR(s.i2, 0.25, 1e-12);
  EXPECT_NEAR(s.i3, 0.25, 1e-12);
  EXPECT_NEAR(s.i1, 0.0, 1e-12);
  EXPECT_NEAR(sorkin_term(c, t, 1), 0.5, 1e-12);
  for (int port = 1; port <= 3; ++port) {
    EXPECT_NEAR(sorkin_term(c, t, port), oracle::sorkin_n3(c.tensor(), t.matrix(), port), 1e-12);
    EXPECT_NEAR(sorkin_term(c, t3_matrix(), port), oracle::sorkin_n3(c.tensor(), t3_matrix().matrix(), port), 1e-12);
  }
}

TEST(Sorkin, PropertyVanishesForQuantumCubes) {
  testgen::Gen g(61);
  const MultiportMatrix t = assemble_multiport(3);
  for (int trial = 0; trial < 300; ++trial) {
    const HermitianCube c = quantum_to_cube(DensityMatrix::from_matrix(g.diagonal_density_matrix(3)));
    const int port = g.integer(1, 3);
    EXPECT_NEAR(sorkin_term(c, t, port), 0.0, 1e-12);
    const HermitianCube d = dephase(quantum_to_cube(DensityMatrix::from_matrix(g.density_matrix(3))));
    EXPECT_NEAR(sorkin_term(d, t, port), 0.0, 1e-12);
  }
}

TEST(Sorkin, PropertyAgreesWithOracleOnThreePathCubes) {
  testgen::Gen g(62);
  const MultiportMatrix t = assemble_multiport(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex z = g.complex_normal();
    const HermitianCube c =
        hermitian_complete({{{1, 1, 1}, g.uniform()}, {{2, 2, 2}, g.uniform()}, {{3, 3, 3}, g.uniform()}, {{1, 2, 3}, z}}, 3);
    const int port = g.integer(1, 3);
    EXPECT_NEAR(sorkin_term(c, t, port), oracle::sorkin_n3(c.tensor(), t.matrix(), port), 1e-12);
  }
}

TEST(Sorkin, Errors) {
  EXPECT_THROW(sorkin_term(basis_cube(4, 1), assemble_multiport(4), 1), InvalidArgument);
  EXPECT_THROW(sorkin_term(basis_cube(3, 1), assemble_multiport(3), 4), InvalidArgument);
  const HermitianCube two_path = quantum_to_cube(DensityMatrix::maximally_mixed(3));
  Vector psi(3);
  psi << 1.0, 1.0, 0.0;
  EXPECT_THROW(sorkin_term(quantum_to_cube(DensityMatrix::pure(psi)), assemble_multiport(3), 1), OutsideDomain);
  EXPECT_NO_THROW(sorkin_term(two_path, assemble_multiport(3), 1));
}

TEST(QuantumPresets, AllSatisfyInvariantsNonePerfect) {
  const auto presets = run_quantum_presets();
  ASSERT_EQ(presets.size(), 8u);
  EXPECT_EQ(presets.front().name, "elitzur-vaidman");
  EXPECT_EQ(presets.back().name, "fourier-8");
  for (const auto& p : presets) {
    EXPECT_TRUE(satisfies_invariants(p.result)) << p.name;
    EXPECT_FALSE(is_perfect_ifm(p.result)) << p.name;
  }
  EXPECT_NEAR(presets.back().result.p_inconclusive, 49.0 / 64.0, 1e-10);
}

TEST(SampleClicks, DeterministicAndConsistent) {
  const IFMResult r = run_cube_ifm(3);
  const auto a = sample_clicks(r, 10000, 99);
  const auto b = sample_clicks(r, 10000, 99);
  EXPECT_EQ(a.inconclusive, b.inconclusive);
  EXPECT_EQ(a.triggered, 0u);
  EXPECT_EQ(a.triggered + a.inconclusive + a.success, 10000u);
  EXPECT_NEAR(a.inconclusive / 10000.0, 0.5, 0.03);
}

TEST(Samplers, ProduceValidObjects) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    const DensityMatrix rho = random_density_matrix(n, rng);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(random_pure_state(n, rng).purity(), 1.0, 1e-12);
    const Matrix u = haar_unitary(n, rng).matrix();
    EXPECT_LT(oracle::max_abs(u * u.adjoint() - Matrix::Identity(n, n)), 1e-12);
  }
  EXPECT_THROW(random_density_matrix(3, 4, rng), InvalidArgument);
}

TEST(Samplers, TunedUnitaryDarkensPorts) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    const int rank = 1 + trial % n;
    const DensityMatrix rho = random_density_matrix(n, rank, rng);
    const Matrix out = tuned_unitary(rho, rng).evolve(rho);
    int lit = 0;
    for (int s = 0; s < n; ++s) lit += out(s, s).real() > 1e-9 ? 1 : 0;
    EXPECT_EQ(lit, rank);
  }
}
