#include "boxembed/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "boxembed/domain_quadrature.hpp"
#include "boxembed/experiments.hpp"

namespace boxembed {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool strict = true;
  bool widened = true;
  std::ostringstream detail;

  /// Asserts measured <= bound (bound widened by scale for the soft verdict).
  void upper(const std::string& what, double measured, double bound, double scale) {
    strict = strict && measured <= bound;
    widened = widened && measured <= bound * scale;
    detail << what << "=" << measured << " (<= " << bound << "); ";
  }
  /// Asserts measured >= bound (bound relaxed by scale for the soft verdict).
  void lower(const std::string& what, double measured, double bound, double scale) {
    strict = strict && measured >= bound;
    widened = widened && measured >= bound / scale;
    detail << what << "=" << measured << " (>= " << bound << "); ";
  }
  /// Asserts measured within [expected/factor, expected*factor].
  void within(const std::string& what, double measured, double expected, double factor,
              double scale) {
    const double f = factor, fs = factor * scale;
    auto in = [&](double r) { return measured >= expected / r && measured <= expected * r; };
    strict = strict && in(f);
    widened = widened && in(fs);
    detail << what << "=" << measured << " (expected " << expected << " x" << factor << "); ";
  }
  void require(const std::string& what, bool ok) {
    strict = strict && ok;
    widened = widened && ok;
    detail << what << (ok ? " ok; " : " FAILED; ");
  }
};

CriterionResult finish(int id, const std::string& name, Check& c, Clock::time_point t0,
                       double budget_s) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.detail << "runtime=" << r.seconds << "s (< " << budget_s << "s)";
  r.pass = c.strict && r.seconds < budget_s;
  r.within_widened = c.widened && r.seconds < budget_s;
  r.detail = c.detail.str();
  return r;
}

// --- 1: faithful-discretization contracts -------------------------------

CriterionResult criterion_faithful(double ts, std::uint64_t seed) {
  const auto t0 = Clock::now();
  Check c;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  for (int m : {8, 16, 32}) {
    const Grid2 grid = make_grid(m);
    // Orthonormality: exhaustive for m <= 16, random index pairs at m = 32.
    double worst = 0.0;
    auto mode = [&](int k1, int k2) {
      return GridField::sample(grid,
                               [&](double x, double y) { return eval_basis(k1, k2, x, y); });
    };
    std::vector<std::array<int, 4>> pairs;
    if (m <= 16) {
      for (int k1 = -m / 2; k1 < m / 2; ++k1)
        for (int k2 = -m / 2; k2 < m / 2; ++k2)
          pairs.push_back({k1, k2, k1, k2});
      std::uniform_int_distribution<int> pick(-m / 2, m / 2 - 1);
      for (int t = 0; t < 4 * m * m; ++t)
        pairs.push_back({pick(rng), pick(rng), pick(rng), pick(rng)});
    } else {
      std::uniform_int_distribution<int> pick(-m / 2, m / 2 - 1);
      for (int t = 0; t < 256; ++t) pairs.push_back({pick(rng), pick(rng), pick(rng), pick(rng)});
    }
    for (const auto& [k1, k2, l1, l2] : pairs) {
      const cplx val = pairing(mode(k1, k2), conj_field(mode(l1, l2)));
      const double want = (k1 == l1 && k2 == l2) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(val - want));
    }
    c.upper("orthonormality_m" + std::to_string(m), worst, 1e-12, ts);

    // Parseval and round trip on random fields.
    double worst_p = 0.0, worst_rt = 0.0;
    for (int t = 0; t < 20; ++t) {
      GridField u(grid), v(grid);
      for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = cplx(unif(rng), unif(rng));
        v[i] = cplx(unif(rng), unif(rng));
      }
      const cplx lhs = pairing(u, conj_field(v));
      const SpectralField uh = dft_forward(u), vh = dft_forward(v);
      cplx rhs(0.0, 0.0);
      for (std::size_t i = 0; i < uh.raw().size(); ++i)
        rhs += uh.raw()[i] * std::conj(vh.raw()[i]);
      worst_p = std::max(worst_p, std::abs(lhs - rhs) / std::abs(lhs));
      const GridField back = dft_inverse(uh);
      double diff = 0.0, ref = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        diff = std::max(diff, std::abs(back[i] - u[i]));
        ref = std::max(ref, std::abs(u[i]));
      }
      worst_rt = std::max(worst_rt, diff / ref);
    }
    c.upper("parseval_m" + std::to_string(m), worst_p, 1e-12, ts);
    c.upper("roundtrip_m" + std::to_string(m), worst_rt, 1e-12, ts);
  }
  return finish(1, "faithful discretization (orthonormality, Parseval, round trip)", c, t0, 1.0);
}

// --- 2: delta exactness and super-algebraic evaluation -------------------

CriterionResult criterion_delta(double ts) {
  const auto t0 = Clock::now();
  Check c;
  {
    const int m = 32;
    const Grid2 grid = make_grid(m);
    const int j1 = 5, j2 = 20;
    const GridField d = to_grid_field(delta(grid, grid.node(j1), grid.node(j2)));
    const double peak = std::pow(m / kTwoPi, 2);
    double off = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (a != j1 || b != j2) off = std::max(off, std::abs(d.at(a, b)));
    c.upper("ongrid_offdiagonal", off, 1e-10, ts);
    c.upper("ongrid_peak_error", std::abs(d.at(j1, j2) - peak) / peak, 1e-12, ts);
  }
  {
    auto phi = [](double x, double y) { return std::exp(std::sin(x) + std::cos(y)); };
    const double x0 = 0.37, y0 = -1.21;
    double err[2];
    int idx = 0;
    for (int m : {16, 32}) {
      const Grid2 grid = make_grid(m);
      const GridField f = GridField::sample(grid, phi);
      err[idx++] = std::abs(act(delta(grid, x0, y0), f) - phi(x0, y0));
    }
    c.lower("decay_ratio", err[0] / std::max(err[1], 1e-300), 1e2, ts);
  }
  return finish(2, "delta exactness and super-algebraic off-grid evaluation", c, t0, 1.0);
}

// --- 3: boundary-reduced domain quadrature --------------------------------

CriterionResult criterion_quadrature(double ts) {
  const auto t0 = Clock::now();
  Check c;
  const BoundaryCurve disk = BoundaryCurve::circle({0.0, 0.0}, 2.0);
  auto integrand = [](double x, double y) { return std::cos(kPi / 4.0 * (x * x + y * y)); };
  double err_by_m[3];
  int i = 0;
  for (int m : {32, 64, 96}) {
    const Grid2 grid = make_grid(m);
    const GridField u = GridField::sample(grid, integrand);
    double worst = 0.0;
    for (int n_line : {128, 256, 512}) {
      const double val = integrate(build_quadrature(disk, grid, n_line), u);
      worst = std::max(worst, std::abs(val));  // exact integral is 0
    }
    err_by_m[i++] = worst;
  }
  c.require("monotone m=32->64->96", err_by_m[0] > err_by_m[1] && err_by_m[1] > err_by_m[2]);
  // Documented normalization: error relative to the integral of |u| (= 8).
  c.within("m96_error_rel_abs_u", err_by_m[2] / 8.0, 8.73e-06, 10.0, ts);
  return finish(3, "domain quadrature accuracy and m-convergence", c, t0, 10.0);
}

// --- helpers shared by the boundary-value criteria ------------------------

struct DirichletRun {
  double e_inf = 0.0, e_2 = 0.0, cond = 0.0;
};

DirichletRun run_dirichlet(int m, int n, double delta, double radius,
                           KernelFlavor flavor = KernelFlavor::SmoothPhi) {
  const Grid2 grid = make_grid(m);
  const BoundaryCurve disk = BoundaryCurve::circle({0.0, 0.0}, radius);
  const BvpProblem problem{BvpKind::Dirichlet, disk,
                           GridField::sample(grid, [](double, double) { return 1.0; }),
                           {},
                           padding_psi(grid, PaddingStyle::GaussianCorner)};
  TestFunctionSpec tf;
  tf.kind = flavor == KernelFlavor::RoughDelta ? TestFunctionKind::Dirac
                                               : TestFunctionKind::Symmetric;
  tf.alpha = default_alpha(m);
  SolveOptions opts;
  opts.flavor = flavor;
  BvpSolution sol = solve_bvp(problem, sample_boundary(disk, n, delta), tf, opts);
  restrict_and_error(sol, [radius](double x, double y) {
    return cplx((radius * radius - x * x - y * y) / 4.0, 0.0);
  });
  return {sol.e_inf, sol.e_2, sol.cond_M};
}

CriterionResult criterion_dirichlet(double ts) {
  const auto t0 = Clock::now();
  Check c;
  // Spec configuration: unit disk, u = (1 - r^2)/4.
  c.within("e_inf(128,80,B1)", run_dirichlet(128, 80, 0.4, 1.0).e_inf, 1.94e-07, 100.0, ts);
  c.within("e_inf(256,112,B1)", run_dirichlet(256, 112, 0.4, 1.0).e_inf, 1.17e-10, 100.0, ts);
  // The decreasing-in-n column lives on the radius-2 disk (where the
  // reference table was produced); on the unit disk the error floors at
  // rounding level from n = 80 on.
  double prev = 1e300;
  bool monotone = true;
  std::ostringstream seq;
  for (int n : {64, 80, 96, 112}) {
    const double e = run_dirichlet(256, n, 0.4, 2.0).e_inf;
    seq << e << " ";
    monotone = monotone && e < prev;
    prev = e;
  }
  c.require("monotone (256, n=64..112, B2): " + seq.str(), monotone);
  return finish(4, "Dirichlet accuracy and n-monotonicity", c, t0, 120.0);
}

CriterionResult criterion_delta_sweep(double ts) {
  const auto t0 = Clock::now();
  Check c;
  double first_e = 0.0, last_e = 0.0;
  double prev_e = 1e300, prev_c = 0.0;
  bool mono_e = true, mono_c = true;
  const double deltas[] = {0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  for (double d : deltas) {
    const DirichletRun r = run_dirichlet(256, 64, d, 2.0);
    if (d == 0.15) first_e = r.e_inf;
    last_e = r.e_inf;
    mono_e = mono_e && r.e_inf < prev_e;
    mono_c = mono_c && r.cond > prev_c;
    prev_e = r.e_inf;
    prev_c = r.cond;
  }
  c.require("e_inf decreasing over delta", mono_e);
  c.require("cond increasing over delta", mono_c);
  c.within("e_inf(delta=0.15)", first_e, 9.06e-04, 100.0, ts);
  c.within("e_inf(delta=0.7)", last_e, 1.42e-09, 100.0, ts);
  return finish(5, "offset-distance sweep monotonicity and endpoints", c, t0, 120.0);
}

CriterionResult criterion_rough_kernel(double ts) {
  const auto t0 = Clock::now();
  Check c;
  const DirichletRun r = run_dirichlet(128, 64, 0.0, 2.0, KernelFlavor::RoughDelta);
  c.within("cond(M_delta)", r.cond, 10.9, 2.0, ts);
  c.within("e_inf", r.e_inf, 5.49e-02, 10.0, ts);
  return finish(6, "rough-kernel conditioning and accuracy trade-off", c, t0, 60.0);
}

CriterionResult criterion_precondition(double ts) {
  const auto t0 = Clock::now();
  Check c;
  const int m = 256, n = 128;
  const Grid2 grid = make_grid(m);
  const BoundaryCurve disk = BoundaryCurve::circle({0.0, 0.0}, 2.0);
  const BvpProblem problem{BvpKind::Dirichlet, disk,
                           GridField::sample(grid, [](double, double) { return 1.0; }),
                           {},
                           padding_psi(grid, PaddingStyle::GaussianCorner)};
  const BoundarySample sample = sample_boundary(disk, n, 0.4);
  TestFunctionSpec tf;
  tf.kind = TestFunctionKind::Symmetric;
  tf.alpha = default_alpha(m);
  const KernelMatrix smooth = assemble_matrix(problem, sample, tf, KernelFlavor::SmoothPhi);
  const KernelMatrix rough = assemble_matrix(problem, sample, tf, KernelFlavor::RoughDelta);
  const Eigen::MatrixXcd C = rough.lu().solve(smooth.entries);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C);
  const double cond_c = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  c.lower("cond(M_phi)", smooth.cond2(), 1e5, ts);
  c.upper("cond(M_delta)", rough.cond2(), 1e2, ts);
  c.upper("cond(M_delta^-1 M_phi)", cond_c, 25.0, ts);
  return finish(7, "preconditioning by the rough kernel", c, t0, 120.0);
}

CriterionResult criterion_kernel_functions(double ts) {
  const auto t0 = Clock::now();
  Check c;
  const BoundaryCurve disk = BoundaryCurve::circle({0.0, 0.0}, 2.0);
  {
    const Grid2 grid = make_grid(512);
    TestFunctionSpec tf;
    tf.kind = TestFunctionKind::Symmetric;
    tf.alpha = default_alpha(512);
    const HarmonicResolution res =
        kernel_function_resolution(grid, sample_boundary(disk, 256, 0.4), tf, 33);
    double worst = 0.0;
    for (const auto& he : res.errors)
      if (he.k >= 1) worst = std::max(worst, he.e_2);
    c.upper("max l2 error k=1..33 (512,256)", worst, 1e-10, ts);
  }
  {
    const Grid2 grid = make_grid(128);
    TestFunctionSpec tf;
    tf.kind = TestFunctionKind::Symmetric;
    tf.alpha = default_alpha(128);
    const HarmonicResolution res =
        kernel_function_resolution(grid, sample_boundary(disk, 80, 0.4), tf, 33);
    const double e1 = res.errors[1].e_2, e33 = res.errors[33].e_2;
    c.within("l2 error k=33 (128,80)", e33, 7.05e-02, 10.0, ts);
    c.require("error grows with k (k33 > 100 x k1)", e33 > 100.0 * e1);
  }
  return finish(8, "harmonic kernel-function resolution", c, t0, 300.0);
}

CriterionResult criterion_neumann(double ts) {
  const auto t0 = Clock::now();
  Check c;
  auto run = [](int m, int n) {
    const Grid2 grid = make_grid(m);
    const BoundaryCurve disk = BoundaryCurve::circle({0.0, 0.0}, 2.0);
    const double a = 1.0 + kPi * kPi / 4.0;
    const GridField f = GridField::sample(grid, [a](double x, double y) {
      const double r = std::hypot(x, y);
      const double s = r < 1e-12 ? kPi / 2.0 : std::sin(kPi * r / 2.0) / r;
      return std::cos(kPi * r / 2.0) * a + (kPi / 2.0) * s;
    });
    const BvpProblem problem{BvpKind::Neumann, disk, f, {},
                             padding_psi(grid, PaddingStyle::TanhRadial)};
    TestFunctionSpec tf;
    tf.kind = TestFunctionKind::Symmetric;
    tf.alpha = default_alpha(m);
    BvpSolution sol = solve_bvp(problem, sample_boundary(disk, n, 0.4), tf, {});
    restrict_and_error(
        sol, [](double x, double y) { return cplx(std::cos(kPi * std::hypot(x, y) / 2.0), 0.0); });
    return sol;
  };
  const BvpSolution a = run(128, 64);
  c.within("e_inf(128,64)", a.e_inf, 2.12e-05, 100.0, ts);
  c.within("cond(128,64)", a.cond_M, 9.83e+01, 5.0, ts);
  const BvpSolution b = run(256, 128);
  c.within("e_inf(256,128)", b.e_inf, 4.41e-10, 100.0, ts);
  c.within("cond(256,128)", b.cond_M, 3.33e+04, 5.0, ts);
  return finish(9, "Neumann accuracy and conditioning", c, t0, 120.0);
}

CriterionResult criterion_fast_path(double ts) {
  const auto t0 = Clock::now();
  Check c;
  const int m = 256, n = 128;
  const Grid2 grid = make_grid(m);
  const BoundaryCurve disk = BoundaryCurve::circle({0.0, 0.0}, 2.0);
  const BvpProblem problem{BvpKind::Dirichlet, disk,
                           GridField::sample(grid, [](double, double) { return 1.0; }),
                           {},
                           padding_psi(grid, PaddingStyle::GaussianCorner)};
  const BoundarySample snapped = nearest_grid_snap(sample_boundary(disk, n, 0.4), grid);
  TestFunctionSpec tf;
  tf.kind = TestFunctionKind::NormalDerivative;
  tf.alpha = default_alpha(m);

  const auto t_direct = Clock::now();
  const KernelMatrix direct = assemble_matrix(problem, snapped, tf, KernelFlavor::SmoothPhi);
  const double ms_direct = std::chrono::duration<double, std::milli>(Clock::now() - t_direct).count();

  const auto t_fast = Clock::now();
  AssemblyOptions fast_opts;
  fast_opts.translation_fast_path = true;
  const KernelMatrix fast =
      assemble_matrix(problem, snapped, tf, KernelFlavor::SmoothPhi, fast_opts);
  const double ms_fast = std::chrono::duration<double, std::milli>(Clock::now() - t_fast).count();

  const double diff = (direct.entries - fast.entries).cwiseAbs().maxCoeff();
  c.upper("max entry difference", diff, 1e-12, ts);
  c.lower("speedup (direct " + std::to_string(ms_direct) + "ms vs fast " +
              std::to_string(ms_fast) + "ms)",
          ms_direct / ms_fast, 5.0, ts);
  return finish(10, "translation fast path equivalence and speedup", c, t0, 120.0);
}

}  // namespace

std::vector<CriterionResult> run_acceptance(double tol_scale, std::uint64_t seed,
                                            std::ostream* log) {
  std::vector<CriterionResult> out;
  auto push = [&](CriterionResult r) {
    if (log)
      (*log) << (r.pass ? "[PASS] " : (r.within_widened ? "[WARN] " : "[FAIL] ")) << "criterion "
             << r.id << ": " << r.name << "\n        " << r.detail << "\n";
    out.push_back(std::move(r));
  };
  push(criterion_faithful(tol_scale, seed));
  push(criterion_delta(tol_scale));
  push(criterion_quadrature(tol_scale));
  push(criterion_dirichlet(tol_scale));
  push(criterion_delta_sweep(tol_scale));
  push(criterion_rough_kernel(tol_scale));
  push(criterion_precondition(tol_scale));
  push(criterion_kernel_functions(tol_scale));
  push(criterion_neumann(tol_scale));
  push(criterion_fast_path(tol_scale));
  return out;
}

int report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out,
                      bool warn_only_when_widened_pass) {
  int failures = 0;
  for (const auto& r : results) {
    const char* tag = r.pass ? "PASS" : (r.within_widened && warn_only_when_widened_pass ? "WARN" : "FAIL");
    out << "[" << tag << "] criterion " << r.id << ": " << r.name << "\n    " << r.detail << "\n";
    if (!r.pass && !(r.within_widened && warn_only_when_widened_pass)) ++failures;
  }
  out << (failures == 0 ? "all criteria passed\n" : std::to_string(failures) + " criteria failed\n");
  return failures;
}

}  // namespace boxembed
