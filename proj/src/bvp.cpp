#include "boxembed/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fft_engine.hpp"

namespace boxembed {

namespace {

Symbol solve_symbol(BvpKind kind) {
  return kind == BvpKind::Dirichlet ? green_dirichlet_symbol() : green_neumann_symbol();
}

// Transform of a field with the solve symbol already applied, natural order.
std::vector<cplx> solved_hat(const GridField& src, const Symbol& sym) {
  SpectralField hat = dft_forward(src);
  const int m = src.grid().m();
  for (int p1 = 0; p1 < m; ++p1)
    for (int p2 = 0; p2 < m; ++p2)
      hat.raw()[src.grid().index(p1, p2)] *= sym.a(signed_index(p1, m), signed_index(p2, m));
  return std::move(hat.raw());
}

GridField column_source(const Grid2& grid, KernelFlavor flavor, const TestFunctionSpec& tmpl,
                        const BoundarySample& sample, int k) {
  if (flavor == KernelFlavor::RoughDelta)
    return to_grid_field(delta(grid, sample.points[std::size_t(k)].x, sample.points[std::size_t(k)].y));
  TestFunctionSpec spec = tmpl;
  spec.center = {sample.offsets[std::size_t(k)].x, sample.offsets[std::size_t(k)].y};
  spec.normal = {sample.normals[std::size_t(k)].x, sample.normals[std::size_t(k)].y};
  return test_function(grid, spec);
}

bool needs_projection(BvpKind kind, KernelFlavor flavor, const TestFunctionSpec& tmpl) {
  if (kind != BvpKind::Dirichlet) return false;
  // Normal-derivative sources are mean zero already.
  return flavor == KernelFlavor::RoughDelta || tmpl.kind != TestFunctionKind::NormalDerivative;
}

double padding_at_nearest_node(const GridField& psi, const Point& p) {
  const Grid2& g = psi.grid();
  const int m = g.m();
  auto idx = [&](double x) {
    long j = std::lround((x + kPi) / g.spacing());
    return int(((j % m) + m) % m);
  };
  return std::abs(psi.at(idx(p.x), idx(p.y)));
}

void check_source_outside(const BoundaryCurve& curve, const Point& c) {
  bool inside_closed;
  if (curve.is_circle()) {
    const double d = std::hypot(c.x - curve.center().x, c.y - curve.center().y);
    inside_closed = d <= curve.radius() * (1.0 + 1e-12);
  } else {
    inside_closed = curve.contains(c);
  }
  if (inside_closed)
    throw std::invalid_argument("assemble_matrix: source center lies inside the closed domain");
}

int wrap_index(long j, int m) { return int(((j % m) + m) % m); }

}  // namespace

RowFunctionals::RowFunctionals(BvpKind kind, const BoundarySample& sample, const Grid2& grid)
    : m_(grid.m()), n_(sample.n) {
  const int m = m_, n = n_;
  Eigen::MatrixXcd F0(m, n), G0(m, n);
  for (int j = 0; j < n; ++j) {
    const auto p1 = axis_phase_table(m, sample.points[std::size_t(j)].x);
    const auto p2 = axis_phase_table(m, sample.points[std::size_t(j)].y);
    for (int p = 0; p < m; ++p) {
      F0(p, j) = p1[std::size_t(p)] / kTwoPi;
      G0(p, j) = p2[std::size_t(p)];
    }
  }
  if (kind == BvpKind::Dirichlet) {
    terms_.emplace_back(std::move(F0), std::move(G0));
    return;
  }
  // Flux rows i (nu . k) e_k(y_j): two separable terms.
  Eigen::MatrixXcd F1 = F0, G2 = G0;
  for (int j = 0; j < n; ++j) {
    const cplx n1(0.0, sample.normals[std::size_t(j)].x);
    const cplx n2(0.0, sample.normals[std::size_t(j)].y);
    for (int p = 0; p < m; ++p) {
      F1(p, j) *= n1 * double(signed_index(p, m));
      G2(p, j) *= n2 * double(signed_index(p, m));
    }
  }
  terms_.emplace_back(std::move(F1), std::move(G0));
  terms_.emplace_back(std::move(F0), std::move(G2));
}

Eigen::VectorXcd RowFunctionals::eval(const cplx* hat) const {
  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> C(hat, m_, m_);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n_);
  Eigen::MatrixXcd T(m_, n_);
  for (const auto& [F, G] : terms_) {
    T.noalias() = C * G;
    for (int j = 0; j < n_; ++j) out(j) += (F.col(j).array() * T.col(j).array()).sum();
  }
  return out;
}

std::vector<cplx> RowFunctionals::tilde_row(int j) const {
  std::vector<cplx> t(std::size_t(m_) * std::size_t(m_), cplx(0.0, 0.0));
  for (const auto& [F, G] : terms_)
    for (int p1 = 0; p1 < m_; ++p1)
      for (int p2 = 0; p2 < m_; ++p2)
        t[std::size_t(p1) * m_ + p2] += F(p1, j) * G(p2, j);
  return t;
}

double KernelMatrix::cond2() const {
  if (cond_ < 0.0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(entries);
    const auto& s = svd.singularValues();
    cond_ = s(0) / s(s.size() - 1);
  }
  return cond_;
}

const Eigen::PartialPivLU<Eigen::MatrixXcd>& KernelMatrix::lu() const {
  if (!lu_) {
    lu_ = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXcd>>(entries);
    const auto diag = lu_->matrixLU().diagonal();
    const double scale = entries.cwiseAbs().maxCoeff();
    double dmin = diag.cwiseAbs().minCoeff();
    if (dmin <= 1e-14 * scale) {
      std::ostringstream msg;
      msg << "KernelMatrix: numerically singular system (pivot " << dmin << ", scale " << scale
          << ", cond2 ~ " << cond2() << ")";
      lu_.reset();
      throw std::runtime_error(msg.str());
    }
  }
  return *lu_;
}

GridField particular_solution(const BvpProblem& problem) {
  if (problem.kind == BvpKind::Dirichlet) {
    GridField projected = project_mean_zero(problem.rhs, problem.padding);
    return apply_symbol(green_dirichlet_symbol(), projected);
  }
  if (problem.padding.grid() != problem.rhs.grid())
    throw std::invalid_argument("particular_solution: cutoff grid mismatch");
  GridField cut(problem.rhs.grid());
  for (std::size_t i = 0; i < cut.size(); ++i) cut[i] = problem.rhs[i] * problem.padding[i];
  return apply_symbol(green_neumann_symbol(), cut);
}

KernelMatrix assemble_matrix(const BvpProblem& problem, const BoundarySample& sample,
                             const TestFunctionSpec& tf_template, KernelFlavor flavor,
                             const AssemblyOptions& opts) {
  const Grid2& grid = problem.rhs.grid();
  const int m = grid.m();
  const int n = sample.n;
  tf_template.validate();

  if (flavor == KernelFlavor::SmoothPhi)
    for (const auto& c : sample.offsets) check_source_outside(problem.domain, c);

  KernelMatrix M;
  M.flavor = flavor;
  M.kind = problem.kind;
  M.entries.resize(n, n);
  M.column_hats.resize(std::size_t(n));
  const auto& centers = flavor == KernelFlavor::RoughDelta ? sample.points : sample.offsets;
  for (const auto& c : centers)
    M.center_padding_overlap = std::max(M.center_padding_overlap,
                                        padding_at_nearest_node(problem.padding, c));

  const RowFunctionals rows(problem.kind, sample, grid);
  const Symbol sym = solve_symbol(problem.kind);
  const bool project = needs_projection(problem.kind, flavor, tf_template);

  if (!opts.translation_fast_path) {
    #pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) {
      GridField src = column_source(grid, flavor, tf_template, sample, k);
      if (project) src = project_mean_zero(src, problem.padding);
      std::vector<cplx> hat = solved_hat(src, sym);
      M.entries.col(k) = rows.eval(hat.data());
      M.column_hats[std::size_t(k)] = std::move(hat);
    }
    return M;
  }

  // Translation fast path: all sources are shifts of one per-component base
  // profile, so two box solves plus one transform per row cover the whole
  // matrix: M(j,k) = sum_i nu_i(k) * DFT2[tilde_j . what_i](s_k).
  if (flavor != KernelFlavor::SmoothPhi || tf_template.kind != TestFunctionKind::NormalDerivative)
    throw std::invalid_argument(
        "assemble_matrix: the translation fast path needs NormalDerivative sources");
  if (!sample.snapped)
    throw std::invalid_argument("assemble_matrix: the translation fast path needs snapped centers");

  const Point base = sample.offsets[0];
  auto node_of = [&](double x) { return std::lround((x + kPi) / grid.spacing()); };
  std::vector<std::array<int, 2>> shifts(std::size_t(n));
  for (int k = 0; k < n; ++k) {
    shifts[std::size_t(k)] = {
        wrap_index(node_of(sample.offsets[std::size_t(k)].x) - node_of(base.x), m),
        wrap_index(node_of(sample.offsets[std::size_t(k)].y) - node_of(base.y), m)};
  }

  std::array<std::vector<cplx>, 2> base_hat;
  for (int i = 0; i < 2; ++i) {
    TestFunctionSpec spec = tf_template;
    spec.center = {base.x, base.y};
    spec.normal = i == 0 ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
    base_hat[std::size_t(i)] = solved_hat(test_function(grid, spec), sym);
  }

  #pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < n; ++j) {
    const std::vector<cplx> tilde = rows.tilde_row(j);
    std::vector<cplx> prod(tilde.size()), lattice1(tilde.size()), lattice2(tilde.size());
    for (std::size_t i = 0; i < tilde.size(); ++i) prod[i] = tilde[i] * base_hat[0][i];
    detail::fft2(m, prod.data(), lattice1.data(), true);
    for (std::size_t i = 0; i < tilde.size(); ++i) prod[i] = tilde[i] * base_hat[1][i];
    detail::fft2(m, prod.data(), lattice2.data(), true);
    for (int k = 0; k < n; ++k) {
      const auto [s1, s2] = shifts[std::size_t(k)];
      const std::size_t at = std::size_t(s1) * m + std::size_t(s2);
      M.entries(j, k) = sample.normals[std::size_t(k)].x * lattice1[at] +
                        sample.normals[std::size_t(k)].y * lattice2[at];
    }
  }

  // Materialize the column transforms (shift = phase in coefficient space).
  #pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n; ++k) {
    const auto [s1, s2] = shifts[std::size_t(k)];
    std::vector<cplx> ph1(std::size_t(m)), ph2(std::size_t(m));
    for (int p = 0; p < m; ++p) {
      ph1[std::size_t(p)] = std::polar(1.0, -kTwoPi * double(p) * s1 / m);
      ph2[std::size_t(p)] = std::polar(1.0, -kTwoPi * double(p) * s2 / m);
    }
    std::vector<cplx> hat(std::size_t(m) * m);
    const double n1 = sample.normals[std::size_t(k)].x, n2 = sample.normals[std::size_t(k)].y;
    for (int p1 = 0; p1 < m; ++p1)
      for (int p2 = 0; p2 < m; ++p2) {
        const std::size_t at = std::size_t(p1) * m + std::size_t(p2);
        hat[at] = (n1 * base_hat[0][at] + n2 * base_hat[1][at]) * ph1[std::size_t(p1)] *
                  ph2[std::size_t(p2)];
      }
    M.column_hats[std::size_t(k)] = std::move(hat);
  }
  return M;
}

Eigen::VectorXcd solve_boundary_weights(const KernelMatrix& M, const Eigen::VectorXcd& rhs,
                                        const KernelMatrix* precond, double* cond_precond_out) {
  if (M.entries.rows() != M.entries.cols())
    throw std::invalid_argument("solve_boundary_weights: matrix must be square");
  if (rhs.size() != M.entries.rows())
    throw std::invalid_argument("solve_boundary_weights: rhs length mismatch");
  if (!precond) {
    if (cond_precond_out) *cond_precond_out = std::numeric_limits<double>::quiet_NaN();
    return M.lu().solve(rhs);
  }
  const Eigen::MatrixXcd C = precond->lu().solve(M.entries);
  const Eigen::VectorXcd r2 = precond->lu().solve(rhs);
  Eigen::PartialPivLU<Eigen::MatrixXcd> luC(C);
  if (cond_precond_out) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C);
    const auto& s = svd.singularValues();
    *cond_precond_out = s(0) / s(s.size() - 1);
  }
  return luC.solve(r2);
}

BvpSolution solve_bvp(const BvpProblem& problem, const BoundarySample& sample,
                      const TestFunctionSpec& tf_template, const SolveOptions& opts) {
  const Grid2& grid = problem.rhs.grid();
  const BoundarySample* active = &sample;
  BoundarySample snapped;
  if (opts.snap_centers || opts.translation_fast_path) {
    snapped = nearest_grid_snap(sample, grid);
    active = &snapped;
  }

  const GridField v = particular_solution(problem);
  const SpectralField vhat = dft_forward(v);
  const RowFunctionals rows(problem.kind, *active, grid);
  const Eigen::VectorXcd z = rows.eval(vhat);

  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(active->n);
  if (!problem.boundary_data.empty()) {
    if (int(problem.boundary_data.size()) != active->n)
      throw std::invalid_argument("solve_bvp: boundary data length mismatch");
    for (int j = 0; j < active->n; ++j) g(j) = problem.boundary_data[std::size_t(j)];
  }
  const Eigen::VectorXcd rhs = g - z;

  AssemblyOptions aopts;
  aopts.translation_fast_path = opts.translation_fast_path;
  KernelMatrix M = assemble_matrix(problem, *active, tf_template, opts.flavor, aopts);

  BvpSolution sol{.field = GridField(grid)};
  sol.center_padding_overlap = M.center_padding_overlap;

  if (opts.precondition) {
    KernelMatrix rough = assemble_matrix(problem, *active, tf_template, KernelFlavor::RoughDelta);
    sol.weights = solve_boundary_weights(M, rhs, &rough, &sol.cond_precond);
  } else {
    sol.weights = solve_boundary_weights(M, rhs);
  }
  if (opts.compute_cond) sol.cond_M = M.cond2();

  // Reconstruct in coefficient space, then one inverse transform.
  SpectralField total = vhat;
  for (int k = 0; k < active->n; ++k) {
    const auto& col = M.column_hats[std::size_t(k)];
    const cplx w = sol.weights(k);
    for (std::size_t i = 0; i < col.size(); ++i) total.raw()[i] += w * col[i];
  }
  sol.field = dft_inverse(total);

  const Eigen::VectorXcd trace = rows.eval(total);
  sol.boundary_residual = (trace - g).cwiseAbs().maxCoeff();
  sol.rhs_norm = rhs.cwiseAbs().maxCoeff();

  const int m = grid.m();
  for (int j1 = 0; j1 < m; ++j1)
    for (int j2 = 0; j2 < m; ++j2)
      if (problem.domain.contains({grid.node(j1), grid.node(j2)}))
        sol.interior_mask.push_back(grid.index(j1, j2));
  return sol;
}

std::pair<double, double> restrict_and_error(BvpSolution& sol,
                                             const std::function<cplx(double, double)>& exact) {
  if (sol.interior_mask.empty())
    throw std::invalid_argument("restrict_and_error: empty interior mask");
  const Grid2& grid = sol.field.grid();
  const int m = grid.m();
  double dmax = 0.0, emax = 0.0, d2 = 0.0, e2 = 0.0;
  for (std::size_t idx : sol.interior_mask) {
    const int j1 = int(idx) / m, j2 = int(idx) % m;
    const cplx ue = exact(grid.node(j1), grid.node(j2));
    const double diff = std::abs(sol.field[idx] - ue);
    const double ref = std::abs(ue);
    dmax = std::max(dmax, diff);
    emax = std::max(emax, ref);
    d2 += diff * diff;
    e2 += ref * ref;
  }
  if (emax == 0.0) throw std::invalid_argument("restrict_and_error: exact solution vanishes on the mask");
  sol.e_inf = dmax / emax;
  sol.e_2 = std::sqrt(d2 / e2);
  return {sol.e_inf, sol.e_2};
}

HarmonicResolution kernel_function_resolution(const Grid2& grid, const BoundarySample& sample,
                                              const TestFunctionSpec& tf_template, int k_max) {
  if (k_max > sample.n / 2)
    throw std::invalid_argument("kernel_function_resolution: k_max must be at most n/2");
  // The harmonics below are exact for the disk of radius 2 at the origin.
  for (const auto& p : sample.points)
    if (std::abs(std::hypot(p.x, p.y) - 2.0) > 1e-9)
      throw std::invalid_argument("kernel_function_resolution: sample must lie on the radius-2 disk");

  const BoundaryCurve disk = BoundaryCurve::circle({0.0, 0.0}, 2.0);
  BvpProblem problem{BvpKind::Dirichlet, disk, GridField(grid), {},
                     padding_psi(grid, PaddingStyle::GaussianCorner)};
  KernelMatrix M = assemble_matrix(problem, sample, tf_template, KernelFlavor::SmoothPhi);

  HarmonicResolution out;
  out.cond_M = M.cond2();

  std::vector<std::size_t> mask;
  const int m = grid.m();
  for (int j1 = 0; j1 < m; ++j1)
    for (int j2 = 0; j2 < m; ++j2)
      if (std::hypot(grid.node(j1), grid.node(j2)) < 2.0) mask.push_back(grid.index(j1, j2));

  for (int h = 0; h <= k_max; ++h) {
    Eigen::VectorXcd g(sample.n);
    for (int j = 0; j < sample.n; ++j) {
      const cplx z(sample.points[std::size_t(j)].x / 2.0, sample.points[std::size_t(j)].y / 2.0);
      g(j) = std::pow(z, h);
    }
    const Eigen::VectorXcd w = M.lu().solve(g);
    SpectralField total(grid);
    for (int k = 0; k < sample.n; ++k) {
      const auto& col = M.column_hats[std::size_t(k)];
      for (std::size_t i = 0; i < col.size(); ++i) total.raw()[i] += w(k) * col[i];
    }
    const GridField u = dft_inverse(total);

    double dmax = 0.0, emax = 0.0, d2 = 0.0, e2 = 0.0;
    for (std::size_t idx : mask) {
      const int j1 = int(idx) / m, j2 = int(idx) % m;
      const cplx ue = std::pow(cplx(grid.node(j1) / 2.0, grid.node(j2) / 2.0), h);
      const double diff = std::abs(u[idx] - ue);
      dmax = std::max(dmax, diff);
      emax = std::max(emax, std::abs(ue));
      d2 += diff * diff;
      e2 += std::abs(ue) * std::abs(ue);
    }
    out.errors.push_back({h, dmax / emax, std::sqrt(d2 / e2)});
  }
  return out;
}

}  // namespace boxembed
