#include <gtest/gtest.h>

#include <set>

#include "cubesim/multiport.hpp"
#include "cubesim/reference_data.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cubesim;
using oracle::max_abs;

namespace {

/// Random in-domain state-like coordinates: real diagonal, conjugate-paired coherences.
SubspaceVector random_coords(testgen::Gen& g, const SubBasis& basis) {
  SubspaceVector v{Vector::Zero(basis.dimension())};
  for (int p = 1; p <= basis.n_paths(); ++p) v.coords[basis.diagonal_index(p)] = g.normal();
  for (int i = 0; i < basis.pair_count(); ++i) {
    const Complex z = g.complex_normal();
    v.coords[basis.coherence_index(i)] = z;
    v.coords[basis.conjugate_index(i)] = std::conj(z);
  }
  return v;
}

}  // namespace

TEST(SubBasis, DimensionAndOrder) {
  for (int n = 3; n <= 8; ++n) EXPECT_EQ(sub_basis(n).dimension(), n + (n - 1) * (n - 2));
  const SubBasis b(4);
  const std::vector<std::string> expected = {"M(1)",   "M(2)",   "M(3)",   "M(4)",   "B(2,3)",
                                             "B(2,4)", "B(3,4)", "B(3,2)", "B(4,2)", "B(4,3)"};
  for (int i = 0; i < b.dimension(); ++i) EXPECT_EQ(b.labels()[i].name(), expected[i]);
  for (int i = 0; i < b.dimension(); ++i) EXPECT_EQ(b.partner(b.partner(i)), i);
  EXPECT_THROW(sub_basis(2), InvalidArgument);
}

TEST(SubBasis, CubesAreOrthonormalWithEvenPermutationSupport) {
  const SubBasis b(5);
  for (int i = 0; i < b.dimension(); ++i) {
    for (int j = 0; j < b.dimension(); ++j) {
      EXPECT_NEAR(std::abs(raw_inner(b.cube(i), b.cube(j)) - (i == j ? 1.0 : 0.0)), 0.0, 1e-15);
    }
  }
  const CubeTensor c = b.cube(b.coherence_index(coherence_pair_index(5, 2, 4)));
  const double s = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(c(1, 2, 4).real(), s, 1e-15);
  EXPECT_NEAR(c(4, 1, 2).real(), s, 1e-15);
  EXPECT_NEAR(c(2, 4, 1).real(), s, 1e-15);
  EXPECT_EQ(c(1, 4, 2), Complex(0.0));
}

TEST(Coords, RoundTripProperty) {
  testgen::Gen g(51);
  for (int trial = 0; trial < 200; ++trial) {
    const SubBasis b(g.integer(3, 7));
    const SubspaceVector v = random_coords(g, b);
    const HermitianCube c = from_coords(v, b);
    EXPECT_TRUE(oracle::brute_force_hermitian(c.tensor(), 1e-14));
    EXPECT_LT((to_coords(c, b).coords - v.coords).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(oracle::inner(c.tensor(), c.tensor()), v.coords.squaredNorm(), 1e-12);
  }
}

TEST(Coords, DomainErrors) {
  const SubBasis b(3);
  const HermitianCube two_path = hermitian_complete({{{1, 1, 2}, 0.1}, {{1, 1, 1}, 1.0}}, 3);
  EXPECT_THROW(to_coords(two_path, b), OutsideDomain);
  const HermitianCube no_path_one = hermitian_complete({{{2, 3, 4}, 0.1}}, 4);
  EXPECT_THROW(to_coords(no_path_one, sub_basis(4)), OutsideDomain);
  EXPECT_THROW(to_coords(basis_cube(4, 1), b), DimensionMismatch);
  SubspaceVector bad{Vector::Zero(5)};
  bad.coords[3] = Complex(0.0, 1.0);
  EXPECT_THROW(from_coords(bad, b), NotHermitian);
}

TEST(T3Matrix, InvolutionAndHermitian) {
  const Matrix t = t3_matrix().matrix();
  EXPECT_LT(max_abs(t * t - Matrix::Identity(5, 5)), 1e-12);
  EXPECT_LT(max_abs(t - t.adjoint()), 1e-12);
}

TEST(T3Matrix, AssembledMatchesUpToRelabeling) {
  const MultiportMatrix built = assemble_multiport(3);
  EXPECT_LT(max_abs(conjugate_relabel(built).matrix() - t3_matrix().matrix()), 1e-12);
  EXPECT_LT(max_abs(conjugate_relabel(built).matrix() - built.matrix().conjugate()), 1e-12);
  EXPECT_LT(max_abs(assemble_multiport(3, PhaseSign::negative).matrix() - t3_matrix().matrix()), 1e-12);
}

TEST(PhaseMatrix, OverlapConditionAgainstDirectSum) {
  for (const PhaseSign sign : {PhaseSign::positive, PhaseSign::negative}) {
    for (int n = 3; n <= 12; ++n) {
      const PhaseMatrix pm = build_phase_matrix(n, sign);
      const auto check = check_phase_matrix(pm);
      EXPECT_LT(check.modulus_deviation, 1e-12);
      EXPECT_LT(check.overlap_deviation, 1e-10);
      for (int a = 1; a <= n; ++a)
        for (int c = a + 1; c <= n; ++c) {
          double s = 0.0;
          for (const auto& p : coherence_pairs(n)) s += 2.0 * (std::conj(pm.phase(a, p.v, p.w)) * pm.phase(c, p.v, p.w)).real();
          EXPECT_NEAR(s, 2.0 - n, 1e-10) << "n=" << n;
        }
    }
  }
}

TEST(PhaseMatrix, FourierRowsForN4) {
  // Rows are the non-trivial Fourier rows; omega = -i for the negative sign.
  const PhaseMatrix pm = build_phase_matrix(4, PhaseSign::negative);
  const Complex i(0, 1);
  const Complex row1[4] = {1.0, -i, -1.0, i};
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(std::abs(pm.matrix()(0, c) - row1[c]), 0.0, 1e-15);
  EXPECT_EQ(fourier_row_for_pair(4, 2), 3);
  EXPECT_EQ(fourier_row_for_pair(5, 3), 2);
  EXPECT_THROW(build_phase_matrix(2), InvalidArgument);
  EXPECT_EQ(coherence_pair_index(5, 4, 3), coherence_pair_index(5, 3, 4));
  EXPECT_THROW(coherence_pair_index(5, 1, 3), InvalidArgument);
}

TEST(OptimalCubes, PureOrthonormalStates) {
  for (int n = 3; n <= 10; ++n) {
    const auto cubes = optimal_cubes(n);
    for (int a = 0; a < n; ++a) {
      EXPECT_NEAR(cubes[a].diagonal_sum(), 1.0, 1e-14);
      EXPECT_NEAR(cubes[a].diagonal(a + 1), 0.0, 1e-15);
      for (int b = 0; b < n; ++b) {
        EXPECT_NEAR(oracle::inner(cubes[a].tensor(), cubes[b].tensor()), a == b ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(OptimalCubes, ReferenceN4RealCubesMatch) {
  const auto printed = reference::optimal_cubes_n4();
  for (const PhaseSign sign : {PhaseSign::positive, PhaseSign::negative}) {
    const auto cubes = optimal_cubes(4, sign);
    EXPECT_LT(max_abs_difference(cubes[0].tensor(), printed[0]), 1e-12);
    EXPECT_LT(max_abs_difference(cubes[2].tensor(), printed[2]), 1e-12);
  }
}

TEST(OptimalCubes, ReferenceN4ComplexCubesDisagreeOnlyAtInconsistentEntries) {
  // The printed complex cubes break the conjugation rule at (3,1,4), (3,4,1),
  // (4,1,3), (4,3,1); everywhere else they agree with the negative-sign cubes.
  const auto printed = reference::optimal_cubes_n4();
  const auto cubes = optimal_cubes(4, PhaseSign::negative);
  const std::set<IndexTriple> broken = {{3, 1, 4}, {3, 4, 1}, {4, 1, 3}, {4, 3, 1}};
  for (int g : {1, 3}) {
    std::set<IndexTriple> differ;
    printed[g].for_each_index([&](const IndexTriple& t) {
      if (std::abs(printed[g][t] - cubes[g].tensor()[t]) > 1e-12) differ.insert(t);
    });
    EXPECT_EQ(differ, broken) << "cube " << g + 1;
    for (const auto& t : broken) EXPECT_NEAR(std::abs(printed[g][t] + cubes[g].tensor()[t]), 0.0, 1e-12);
  }
}

TEST(OptimalCubes, SignConventionsAreConjugates) {
  for (int n = 3; n <= 8; ++n) {
    const auto pos = optimal_cubes(n, PhaseSign::positive);
    const auto neg = optimal_cubes(n, PhaseSign::negative);
    for (int a = 0; a < n; ++a) {
      double worst = 0.0;
      pos[a].tensor().for_each_index([&](const IndexTriple& t) {
        worst = std::max(worst, std::abs(neg[a].tensor()[t] - std::conj(pos[a].tensor()[t])));
      });
      EXPECT_LT(worst, 1e-12) << "n=" << n << " cube " << a + 1;
    }
  }
}

TEST(AssembleMultiport, BlockStructure) {
  for (int n = 3; n <= 12; ++n) {
    const MultiportMatrix t = assemble_multiport(n);
    const Matrix a = t.a_block();
    const Matrix b = t.b_block();
    const Matrix d = t.d_block();
    Matrix expected_a = Matrix::Constant(n, n, 1.0 / (n - 1));
    expected_a.diagonal().setZero();
    EXPECT_LT(max_abs(a - expected_a), 1e-14);
    EXPECT_LT(max_abs(t.c_block() - b.adjoint()), 1e-14);
    EXPECT_LT(max_abs(b * Vector::Ones(n)), 1e-12);
    EXPECT_LT(max_abs(d * b - b / (n - 1.0)), 1e-10);
    EXPECT_LT(max_abs(t.matrix() * t.matrix() - Matrix::Identity(t.dimension(), t.dimension())), 1e-10);
    EXPECT_LT(max_abs(t.matrix() - t.matrix().adjoint()), 1e-12);
    EXPECT_GT(hermitian_eigenvalues(d).minCoeff(), 0.0);
  }
}

TEST(AssembleMultiport, MapsPathCubesToOptimalCubes) {
  for (int n = 3; n <= 9; ++n) {
    const MultiportMatrix t = assemble_multiport(n);
    const auto cubes = optimal_cubes(n);
    for (int p = 1; p <= n; ++p) {
      EXPECT_LT(max_abs_difference(apply_transform(t, basis_cube(n, p)), cubes[p - 1]), 1e-10);
      EXPECT_LT(max_abs_difference(apply_transform(t, cubes[p - 1]), basis_cube(n, p)), 1e-10);
    }
  }
}

TEST(AssembleMultiport, SpectraAgainstClosedForms) {
  for (int n = 3; n <= 12; ++n) {
    const MultiportMatrix t = assemble_multiport(n);
    const Matrix b = t.b_block();
    const double big = n * (n - 2.0) / ((n - 1.0) * (n - 1.0));
    for (double e : hermitian_eigenvalues(b * b.adjoint())) {
      EXPECT_LT(std::min(std::abs(e), std::abs(e - big)), 1e-9) << "n=" << n;
    }
    for (double e : hermitian_eigenvalues(t.d_block())) {
      EXPECT_LT(std::min(std::abs(e - 1.0), std::abs(e - 1.0 / (n - 1))), 1e-9) << "n=" << n;
    }
  }
}

TEST(AssembleMultiport, N3BlocksInClosedForm) {
  const MultiportMatrix t = assemble_multiport(3);
  const Matrix b = t.b_block();
  EXPECT_LT(max_abs(b * b.adjoint() - 0.75 * Matrix::Identity(2, 2)), 1e-14);
  EXPECT_LT(max_abs(t.d_block() - 0.5 * Matrix::Identity(2, 2)), 1e-14);
}

TEST(AssembleMultiport, ReferenceN4Data) {
  const MultiportMatrix t = assemble_multiport(4, PhaseSign::negative);
  EXPECT_LT(max_abs(t.d_block() - reference::d_block_n4()), 1e-12);

  const Matrix target = Matrix::Identity(6, 6) - t.b_block() * t.b_block().adjoint();
  for (const Matrix& d : {reference::d_block_n4_alt1(), reference::d_block_n4_alt2()}) {
    EXPECT_LT(max_abs(d * d - target), 1e-12);
    EXPECT_LT(max_abs(d - d.adjoint()), 1e-12);
    // Non-principal roots: one eigenvalue -1.
    EXPECT_NEAR(hermitian_eigenvalues(d).minCoeff(), -1.0, 1e-12);
  }

  const Matrix printed = reference::multiport_n4_alt2();
  EXPECT_LT(max_abs(printed.leftCols(4) - t.matrix().leftCols(4)), 1e-12);
  EXPECT_LT(max_abs(printed.topRows(4) - t.matrix().topRows(4)), 1e-12);
  EXPECT_LT(max_abs(printed.bottomRightCorner(6, 6) - reference::d_block_n4_alt2()), 1e-12);
  EXPECT_LT(max_abs(printed * printed - Matrix::Identity(10, 10)), 1e-12);
  const auto report = verify_multiport(MultiportMatrix(4, printed));
  EXPECT_LT(report.hermiticity_residual, 1e-9);
  EXPECT_LT(report.involution_residual, 1e-9);
  EXPECT_LT(report.diagonal_sum_drift, 1e-9);
  EXPECT_LT(report.bbt_spectrum_deviation, 1e-9);
  // The non-principal block sends some Hermitian cubes to non-Hermitian ones,
  // and its eigenvalue -1 sits at distance 4/3 from {1, 1/3}.
  EXPECT_NEAR(report.pairing_violation, 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(report.d_spectrum_deviation, 4.0 / 3.0, 1e-9);
}

TEST(MultiportMatrix, Errors) {
  EXPECT_THROW(MultiportMatrix(3, Matrix::Identity(4, 4)), DimensionMismatch);
  EXPECT_THROW(apply_transform(assemble_multiport(3), basis_cube(4, 1)), DimensionMismatch);
}

TEST(VerifyMultiport, AcceptsConstructionsAndFlagsCorruption) {
  for (int n = 3; n <= 8; ++n) EXPECT_TRUE(verify_multiport(assemble_multiport(n)).passed(1e-9));
  Matrix broken = t3_matrix().matrix();
  broken(0, 1) += 1e-3;
  const auto report = verify_multiport(MultiportMatrix(3, broken));
  EXPECT_FALSE(report.passed(1e-9));
  EXPECT_GT(report.hermiticity_residual, 1e-4);
}

TEST(ApplyTransform, PropertyPreservesHermiticityAndNormalization) {
  testgen::Gen g(52);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = g.integer(3, 7);
    const SubBasis b(n);
    const MultiportMatrix t = assemble_multiport(n);
    const HermitianCube c = from_coords(random_coords(g, b), b);
    const HermitianCube out = apply_transform(t, c);
    EXPECT_TRUE(oracle::brute_force_hermitian(out.tensor(), 1e-12));
    EXPECT_NEAR(out.diagonal_sum(), c.diagonal_sum(), 1e-10);
    EXPECT_NEAR(purity(out), purity(c), 1e-9 * std::max(1.0, purity(c)));
    EXPECT_LT(max_abs_difference(apply_transform(t, out), c), 1e-9);
  }
}
