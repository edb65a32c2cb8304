#pragma once

#include "boxembed/geometry.hpp"
#include "boxembed/spectral_core.hpp"

namespace boxembed {

/// Quadrature over the interior of a boundary curve using only the boundary
/// parametrization: spectral coefficients of the indicator distribution,
/// built from one-dimensional line integrals, paired against transformed
/// integrands.
class DomainQuadrature {
 public:
  DomainQuadrature(const Grid2& grid, std::vector<cplx> coeffs, int boundary_n);

  const Grid2& grid() const noexcept { return grid_; }
  int boundary_n() const noexcept { return boundary_n_; }
  cplx coeff(int k1, int k2) const noexcept {
    const int m = grid_.m();
    return c_[grid_.index(natural_index(k1, m), natural_index(k2, m))];
  }
  const std::vector<cplx>& raw() const noexcept { return c_; }

 private:
  Grid2 grid_;
  std::vector<cplx> c_;
  int boundary_n_;
};

/// Builds the indicator coefficients with an n_line-point trapezoidal rule
/// along the curve (n_line >= 8, counterclockwise curve required).
DomainQuadrature build_quadrature(const BoundaryCurve& curve, const Grid2& grid, int n_line);

/// Integral of u over the interior: the Parseval sum of the indicator
/// coefficients against the transform of u. Throws if the imaginary residual
/// exceeds tolerance for what should be a real result.
double integrate(const DomainQuadrature& q, const GridField& u);

}  // namespace boxembed
