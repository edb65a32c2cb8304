#pragma once

#include <array>

#include "boxembed/spectral_core.hpp"

namespace boxembed {

/// Grid-blind spectral representation of a finite-order periodic
/// distribution: coefficients u~_k = <u, e_k> for k in {-m/2..m/2-1}^2.
/// Acting on a sampled test function is the Parseval sum over u~_k phi^_k.
class SpectralDistribution {
 public:
  explicit SpectralDistribution(const Grid2& grid) : grid_(grid), c_(grid.size(), cplx(0.0, 0.0)) {}

  const Grid2& grid() const noexcept { return grid_; }
  cplx& tilde(int k1, int k2) noexcept {
    const int m = grid_.m();
    return c_[grid_.index(natural_index(k1, m), natural_index(k2, m))];
  }
  const cplx& tilde(int k1, int k2) const noexcept {
    const int m = grid_.m();
    return c_[grid_.index(natural_index(k1, m), natural_index(k2, m))];
  }
  /// Natural-order storage (p1*m + p2).
  std::vector<cplx>& raw() noexcept { return c_; }
  const std::vector<cplx>& raw() const noexcept { return c_; }

 private:
  Grid2 grid_;
  std::vector<cplx> c_;
};

enum class TestFunctionKind { Symmetric, NormalDerivative, Dirac };

/// Recipe for a localized test function: a periodic bump centered at a point,
/// its analytic normal derivative, or a point evaluation (Dirac).
struct TestFunctionSpec {
  TestFunctionKind kind = TestFunctionKind::Symmetric;
  std::array<double, 2> center{0.0, 0.0};
  double alpha = 1.0;                  // sharpness; larger is narrower
  std::array<double, 2> normal{1.0, 0.0};  // used by NormalDerivative only

  void validate() const;  // throws std::invalid_argument on bad fields
};

/// Point-evaluation distribution at x0 (wrapped into the box periodically):
/// coefficients e_k(x0), built from per-axis factors.
SpectralDistribution delta(const Grid2& grid, double x1, double x2);

/// Derivative-evaluation functionals at x0.
/// Multi-index form acts as phi -> d^a phi(x0); |a| <= 2.
SpectralDistribution delta_derivative(const Grid2& grid, double x1, double x2, int a1, int a2);
/// Directional form acts as phi -> v . grad phi(x0) for a unit vector v.
SpectralDistribution delta_derivative(const Grid2& grid, double x1, double x2,
                                      const std::array<double, 2>& direction);

/// Action <u, phi> via the Parseval sum (one forward transform of phi).
cplx act(const SpectralDistribution& u, const GridField& phi);
/// Same with the transform precomputed.
cplx act(const SpectralDistribution& u, const SpectralField& phi_hat);

/// Physical realization sum_k u~_k conj(e_k)(x_j) on the grid.
GridField to_grid_field(const SpectralDistribution& u);

/// Samples the requested test function on the grid (Dirac defers to delta()).
GridField test_function(const Grid2& grid, const TestFunctionSpec& spec);

enum class PaddingStyle { GaussianCorner, TanhRadial };

/// Padding/cutoff fields: GaussianCorner concentrates along the box edges
/// (vanishes in the bulk), TanhRadial is ~1 inside radius pi-0.2 and ~0 near
/// the box corners.
GridField padding_psi(const Grid2& grid, PaddingStyle style);

/// Projection onto zero-mean fields supported away from psi's mass:
/// u - (u^_00 / psi^_00) psi. Leaves u untouched where psi vanishes.
GridField project_mean_zero(const GridField& u, const GridField& psi);
SpectralDistribution project_mean_zero(const SpectralDistribution& u, const GridField& psi);

}  // namespace boxembed
