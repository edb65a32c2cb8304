#pragma once

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "boxembed/distributions.hpp"
#include "boxembed/geometry.hpp"
#include "boxembed/operators.hpp"
#include "boxembed/spectral_core.hpp"

namespace boxembed {

enum class BvpKind { Dirichlet, Neumann };
enum class KernelFlavor { SmoothPhi, RoughDelta };

/// Interior problem posed on the box: the Dirichlet problem solves the
/// negative Laplacian with a trace condition; the Neumann problem solves the
/// shifted operator (1 - Laplacian) with a flux condition. rhs and padding
/// are fields on the whole box; boundary data lives at the sample points
/// (empty means homogeneous).
struct BvpProblem {
  BvpKind kind;
  BoundaryCurve domain;
  GridField rhs;
  std::vector<double> boundary_data;
  GridField padding;  // mean-shift padding (Dirichlet) or rhs cutoff (Neumann)
};

/// Boundary collocation functionals evaluated spectrally: point values for
/// the Dirichlet problem, outward normal derivatives for the Neumann
/// problem. Each functional is a separable (or two-term separable) phase
/// profile paired against transform coefficients.
class RowFunctionals {
 public:
  RowFunctionals(BvpKind kind, const BoundarySample& sample, const Grid2& grid);

  int n() const noexcept { return n_; }
  /// Applies every row functional to a field given by its transform
  /// coefficients in natural order.
  Eigen::VectorXcd eval(const cplx* hat) const;
  Eigen::VectorXcd eval(const SpectralField& hat) const { return eval(hat.raw().data()); }
  /// Coefficient array of row j (natural order) for direct Parseval sums.
  std::vector<cplx> tilde_row(int j) const;

 private:
  int m_;
  int n_;
  std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>> terms_;  // (F, G), each m x n
};

struct AssemblyOptions {
  /// Build all columns from per-component box solves plus cyclic shifts;
  /// requires snapped centers and NormalDerivative sources.
  bool translation_fast_path = false;
};

/// Dense boundary system matrix with retained column transforms.
class KernelMatrix {
 public:
  Eigen::MatrixXcd entries;
  KernelFlavor flavor = KernelFlavor::SmoothPhi;
  BvpKind kind = BvpKind::Dirichlet;
  std::vector<std::vector<cplx>> column_hats;
  /// Largest padding value seen at a source center (support-overlap diagnostic).
  double center_padding_overlap = 0.0;

  int n() const noexcept { return int(entries.rows()); }
  /// 2-norm condition number via singular values (cached).
  double cond2() const;
  /// LU factorization with partial pivoting (cached). Throws on numerically
  /// singular matrices, reporting the condition estimate.
  const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu() const;

 private:
  mutable std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
  mutable double cond_ = -1.0;
};

struct BvpSolution {
  GridField field;
  Eigen::VectorXcd weights;
  std::vector<std::size_t> interior_mask;
  double boundary_residual = 0.0;  // max |row_j(u) - g_j|
  double rhs_norm = 0.0;           // max |g_j - row_j(v)|
  double cond_M = std::numeric_limits<double>::quiet_NaN();
  double cond_precond = std::numeric_limits<double>::quiet_NaN();
  double center_padding_overlap = 0.0;
  double e_inf = std::numeric_limits<double>::quiet_NaN();
  double e_2 = std::numeric_limits<double>::quiet_NaN();
};

struct SolveOptions {
  KernelFlavor flavor = KernelFlavor::SmoothPhi;
  bool precondition = false;
  bool snap_centers = false;
  bool translation_fast_path = false;
  bool compute_cond = true;
};

/// Box-wide particular solution: Dirichlet applies the Poisson solve symbol
/// to the mean-projected rhs; Neumann applies the shifted solve symbol to
/// the cutoff-multiplied rhs.
GridField particular_solution(const BvpProblem& problem);

/// Boundary system matrix: column k is the box solve of the (projected, for
/// the Dirichlet kernel) source centered at offset point k; row j applies
/// the collocation functional at boundary point j. RoughDelta uses point
/// sources at the on-curve points regardless of the template kind.
KernelMatrix assemble_matrix(const BvpProblem& problem, const BoundarySample& sample,
                             const TestFunctionSpec& tf_template, KernelFlavor flavor,
                             const AssemblyOptions& opts = {});

/// Solves M w = rhs by LU; with a preconditioner P solves (P^{-1}M) w =
/// P^{-1} rhs and reports the 2-norm condition of the preconditioned
/// operator through cond_precond_out when non-null.
Eigen::VectorXcd solve_boundary_weights(const KernelMatrix& M, const Eigen::VectorXcd& rhs,
                                        const KernelMatrix* precond = nullptr,
                                        double* cond_precond_out = nullptr);

/// Full pipeline: particular solution, assembly, weight solve,
/// reconstruction, interior mask, and boundary-residual check.
BvpSolution solve_bvp(const BvpProblem& problem, const BoundarySample& sample,
                      const TestFunctionSpec& tf_template, const SolveOptions& opts = {});

/// Relative interior errors (max and l2) against an exact solution; stores
/// them on the solution as well.
std::pair<double, double> restrict_and_error(BvpSolution& sol,
                                             const std::function<cplx(double, double)>& exact);

struct HarmonicError {
  int k = 0;
  double e_inf = 0.0;
  double e_2 = 0.0;
};

struct HarmonicResolution {
  std::vector<HarmonicError> errors;  // harmonics 0..k_max
  double cond_M = 0.0;
};

/// Resolution of the interior harmonics (r/2)^k e^{ik theta} on the disk of
/// radius 2: solves the homogeneous-rhs Dirichlet system with each harmonic
/// trace as boundary data and reports relative interior errors.
HarmonicResolution kernel_function_resolution(const Grid2& grid, const BoundarySample& sample,
                                              const TestFunctionSpec& tf_template, int k_max);

}  // namespace boxembed
