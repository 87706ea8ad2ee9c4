#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cubesim/cube_states.hpp"
#include "cubesim/experiments.hpp"
#include "cubesim/multiport.hpp"
#include "cubesim/quantum.hpp"
#include "cubesim/reference_data.hpp"
#include "cubesim/sampling.hpp"

namespace cubesim {

struct Check {
  std::string location;
  std::string quantity;
  double computed;
  double expected;
  double tolerance;
  bool pass;
};

struct ReproduceOptions {
  /// Perturb the stored three-path inconclusive probability (self-test of the harness).
  bool corrupt_reference = false;
  std::uint64_t seed = 20180822;
  int quantum_trials = 10000;
  int random_cubes = 1000;
};

namespace detail {

inline Check make_check(std::string location, std::string quantity, double computed, double expected,
                        double tolerance) {
  const bool pass = std::isfinite(computed) && std::abs(computed - expected) <= tolerance;
  return {std::move(location), std::move(quantity), computed, expected, tolerance, pass};
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double spectrum_distance(const Matrix& m, std::initializer_list<double> allowed) {
  double worst = 0.0;
  for (double ev : hermitian_eigenvalues(m)) {
    double best = 1e300;
    for (double a : allowed) best = std::min(best, std::abs(ev - a));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace detail

inline std::vector<Check> reproduce_checks(const ReproduceOptions& opt = {}) {
  using detail::make_check;
  using detail::max_abs;
  std::vector<Check> out;
  const double p_inconclusive_n3 = opt.corrupt_reference ? 0.5 * 1.01 : 0.5;

  {
    const std::string loc = "three-path perfect IFM";
    const CubeIfmTrace tr = trace_optimal_cube_ifm(3);
    out.push_back(make_check(loc, "P_*", tr.result.p_trigger, 0.0, 1e-10));
    out.push_back(make_check(loc, "P_?", tr.result.p_inconclusive, p_inconclusive_n3, 1e-10));
    out.push_back(make_check(loc, "P_? - bound", tr.result.p_inconclusive - tr.result.bound_value, 0.0, 1e-10));
    out.push_back(make_check(loc, "cube inside interferometer (max entry error)",
                             max_abs_difference(tr.inside.tensor(), reference::interferometer_cube_n3()), 0.0,
                             1e-12));
    out.push_back(make_check(loc, "post-measurement cube (max entry error)",
                             max_abs_difference(tr.post_measurement.tensor(), reference::post_measurement_cube_n3()),
                             0.0, 1e-12));
    out.push_back(make_check(loc, "output cube with bomb (max entry error)",
                             max_abs_difference(tr.output_with_bomb.tensor(), reference::bomb_output_cube_n3()), 0.0,
                             1e-12));
    out.push_back(make_check(loc, "post-measurement purity", purity(tr.post_measurement), 0.5, 1e-12));
  }

  {
    const std::string loc = "N-path perfect IFM";
    double previous = 2.0;
    bool decreasing = true;
    for (int n = 3; n <= 12; ++n) {
      const IFMResult r = run_cube_ifm(n);
      out.push_back(make_check(loc, "P_* at N=" + std::to_string(n), r.p_trigger, 0.0, 1e-10));
      out.push_back(make_check(loc, "P_? at N=" + std::to_string(n), r.p_inconclusive, 1.0 / (n - 1), 1e-9));
      decreasing = decreasing && r.p_inconclusive < previous;
      previous = r.p_inconclusive;
    }
    out.push_back(make_check(loc, "P_? strictly decreasing in N", decreasing ? 1.0 : 0.0, 1.0, 0.0));
  }

  {
    const std::string loc = "optimal N=4 cubes";
    const auto computed = optimal_cubes(4, PhaseSign::negative);
    const auto printed = reference::optimal_cubes_n4();
    for (std::size_t g = 0; g < printed.size(); ++g) {
      out.push_back(make_check(loc, "C(" + std::to_string(g + 1) + ") max entry error",
                               max_abs_difference(computed[g].tensor(), printed[g]), 0.0, 1e-12));
    }
    double gram = 0.0;
    for (std::size_t a = 0; a < computed.size(); ++a)
      for (std::size_t b = 0; b < computed.size(); ++b)
        gram = std::max(gram, std::abs(cube_inner(computed[a], computed[b]) - (a == b ? 1.0 : 0.0)));
    out.push_back(make_check(loc, "Gram matrix deviation from identity", gram, 0.0, 1e-12));
  }

  {
    const std::string loc = "three-path multiport";
    const Matrix t3 = t3_matrix().matrix();
    const Matrix id = Matrix::Identity(t3.rows(), t3.cols());
    out.push_back(make_check(loc, "relabeled construction vs printed",
                             max_abs(conjugate_relabel(assemble_multiport(3)).matrix() - t3), 0.0, 1e-12));
    out.push_back(make_check(loc, "T^2 - 1", max_abs(t3 * t3 - id), 0.0, 1e-12));
    out.push_back(make_check(loc, "T - T^dagger", max_abs(t3 - t3.adjoint()), 0.0, 1e-12));
  }

  {
    const std::string loc = "multiport spectra";
    for (int n = 3; n <= 12; ++n) {
      const MultiportMatrix t = assemble_multiport(n);
      const Matrix b = t.b_block();
      const double big = static_cast<double>(n) * (n - 2) / ((n - 1.0) * (n - 1.0));
      out.push_back(make_check(loc, "BB^dagger spectrum at N=" + std::to_string(n),
                               detail::spectrum_distance(b * b.adjoint(), {0.0, big}), 0.0, 1e-9));
      out.push_back(make_check(loc, "D spectrum at N=" + std::to_string(n),
                               detail::spectrum_distance(t.d_block(), {1.0, 1.0 / (n - 1)}), 0.0, 1e-9));
    }
    const MultiportMatrix t4 = assemble_multiport(4, PhaseSign::negative);
    out.push_back(make_check(loc, "N=4 principal D vs printed", max_abs(t4.d_block() - reference::d_block_n4()), 0.0,
                             1e-12));
    const Matrix target = Matrix::Identity(6, 6) - t4.b_block() * t4.b_block().adjoint();
    for (const auto& [name, d] : {std::pair{"first", reference::d_block_n4_alt1()},
                                  std::pair{"second", reference::d_block_n4_alt2()}}) {
      out.push_back(make_check(loc, std::string("N=4 ") + name + " alternative D: D^2 - (1 - BB^dagger)",
                               max_abs(d * d - target), 0.0, 1e-12));
    }
    const Matrix printed = reference::multiport_n4_alt2();
    Matrix assembled = t4.matrix();
    assembled.bottomRightCorner(6, 6) = reference::d_block_n4_alt2();
    out.push_back(make_check(loc, "N=4 full matrix vs printed", max_abs(assembled - printed), 0.0, 1e-12));
    out.push_back(make_check(loc, "N=4 printed matrix T^2 - 1",
                             max_abs(printed * printed - Matrix::Identity(10, 10)), 0.0, 1e-12));
  }

  {
    const std::string loc = "quantum trade-off";
    const IFMResult ev = elitzur_vaidman_ifm();
    out.push_back(make_check(loc, "balanced Mach-Zehnder P_*", ev.p_trigger, 0.5, 1e-12));
    out.push_back(make_check(loc, "balanced Mach-Zehnder P_?", ev.p_inconclusive, 0.25, 1e-12));
    out.push_back(make_check(loc, "balanced Mach-Zehnder P_!", ev.p_success, 0.25, 1e-12));
    for (int n = 2; n <= 8; ++n) {
      const IFMResult f = fourier_ifm(n);
      out.push_back(make_check(loc, "Fourier P_? at N=" + std::to_string(n), f.p_inconclusive,
                               (1.0 - 1.0 / n) * (1.0 - 1.0 / n), 1e-10));
    }
    Rng rng(opt.seed);
    double worst_slack = 0.0;
    double worst_norm = 0.0;
    double worst_purity = 0.0;
    for (int n = 2; n <= 8; ++n) {
      std::uniform_int_distribution<int> path(1, n);
      for (int trial = 0; trial < opt.quantum_trials; ++trial) {
        const DensityMatrix rho = (trial % 4 == 0) ? random_pure_state(n, rng) : random_density_matrix(n, rng);
        const UnitaryMatrix u = (trial % 2 == 0) ? tuned_unitary(rho, rng) : haar_unitary(n, rng);
        const int bomb = path(rng);
        if (rho.population(bomb) > 1.0 - 1e-6) continue;
        const IFMResult r = quantum_ifm(rho, u, bomb);
        worst_slack = std::min(worst_slack, r.p_inconclusive - r.bound_value);
        worst_norm = std::max(worst_norm, std::abs(r.p_trigger + r.p_inconclusive + r.p_success - 1.0));
        if (trial % 4 == 0) {
          const DensityMatrix out_state = DensityMatrix::from_matrix(u.evolve(rho), Tolerance(1e-9));
          worst_purity = std::max(worst_purity, std::abs(out_state.purity() - 1.0));
        }
      }
    }
    out.push_back(make_check(loc, "worst negative slack over random trials", std::min(worst_slack, 0.0), 0.0, 1e-9));
    out.push_back(make_check(loc, "worst normalization error", worst_norm, 0.0, 1e-10));
    out.push_back(make_check(loc, "pure-state purity drift", worst_purity, 0.0, 1e-10));
  }

  {
    const std::string loc = "third-order interference";
    const MultiportMatrix t3 = assemble_multiport(3);
    out.push_back(make_check(loc, "I_3 of interferometer cube, port 1",
                             sorkin_term(trace_optimal_cube_ifm(3).inside, t3, 1), 0.5, 1e-10));
    Rng rng(opt.seed + 1);
    double worst = 0.0;
    for (int i = 0; i < opt.random_cubes; ++i) {
      const HermitianCube c = dephase(quantum_to_cube(random_density_matrix(3, rng)));
      std::uniform_int_distribution<int> port(1, 3);
      worst = std::max(worst, std::abs(sorkin_term(c, t3, port(rng))));
    }
    out.push_back(make_check(loc, "max |I_3| over random quantum cubes", worst, 0.0, 1e-10));
  }

  {
    const std::string loc = "quantum embedding";
    Rng rng(opt.seed + 2);
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
      for (int i = 0; i < opt.random_cubes; ++i) {
        const DensityMatrix a = random_density_matrix(n, rng);
        const DensityMatrix b = random_density_matrix(n, rng);
        const double tr = (a.matrix() * b.matrix()).trace().real();
        worst = std::max(worst, std::abs(cube_inner(quantum_to_cube(a), quantum_to_cube(b)) - tr));
      }
    }
    out.push_back(make_check(loc, "max |(C_rho, C_sigma) - Tr(rho sigma)|", worst, 0.0, 1e-10));
  }

  {
    const std::string loc = "trade-off regions";
    const auto rows = region_scan({2, 3, 4, 5, 6, 10}, 101);
    for (const auto& r : rows) {
      if (r.p_trigger == 0.0) {
        out.push_back(make_check(loc, "intercept at N=" + std::to_string(r.n_paths), r.bound, 1.0 / (r.n_paths - 1),
                                 1e-12));
      }
    }
    double nesting = 0.0;
    double quantum_curve = 0.0;
    for (std::size_t i = 0; i + 101 < rows.size(); ++i) {
      nesting = std::max(nesting, rows[i + 101].bound - rows[i].bound);
    }
    for (std::size_t i = 0; i < 101; ++i) {
      const double q = (1.0 - rows[i].p_trigger) * (1.0 - rows[i].p_trigger);
      quantum_curve = std::max(quantum_curve, std::abs(rows[i].bound - q));
    }
    out.push_back(make_check(loc, "nesting violation", std::max(nesting, 0.0), 0.0, 0.0));
    out.push_back(make_check(loc, "N=2 curve vs (1-P_*)^2", quantum_curve, 0.0, 1e-15));
  }
  return out;
}

}  // namespace cubesim
