#include "boxembed/domain_quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace boxembed {

DomainQuadrature::DomainQuadrature(const Grid2& grid, std::vector<cplx> coeffs, int boundary_n)
    : grid_(grid), c_(std::move(coeffs)), boundary_n_(boundary_n) {
  if (c_.size() != grid_.size())
    throw std::invalid_argument("DomainQuadrature: coefficient count does not match the grid");
}

DomainQuadrature build_quadrature(const BoundaryCurve& curve, const Grid2& grid, int n_line) {
  if (n_line < 8) throw std::invalid_argument("build_quadrature: n_line must be at least 8");
  const int m = grid.m();

  using MatX = Eigen::MatrixXcd;
  MatX P1(n_line, m), P2(n_line, m);
  Eigen::VectorXd d1(n_line), d2(n_line);
  double area2 = 0.0;
  for (int t = 0; t < n_line; ++t) {
    const double tt = kTwoPi * t / n_line;
    const Point g = curve.at(tt);
    const Point gd = curve.velocity(tt);
    d1(t) = gd.x;
    d2(t) = gd.y;
    area2 += g.x * gd.y - gd.x * g.y;
    for (int p = 0; p < m; ++p) {
      const int k = signed_index(p, m);
      P1(t, p) = std::polar(1.0, k * g.x);
      P2(t, p) = std::polar(1.0, k * g.y);
    }
  }
  if (area2 <= 0.0)
    throw std::invalid_argument("build_quadrature: curve must be counterclockwise");

  // S_a(p1,p2) = sum_t gamma_dot_a(t) e^{i k1 g1(t)} e^{i k2 g2(t)} as two
  // dense products.
  MatX S1 = (P1.array().colwise() * d1.array().cast<cplx>()).matrix().transpose() * P2;
  MatX S2 = (P1.array().colwise() * d2.array().cast<cplx>()).matrix().transpose() * P2;

  std::vector<cplx> coeffs(grid.size(), cplx(0.0, 0.0));
  for (int p1 = 0; p1 < m; ++p1) {
    const int k1 = signed_index(p1, m);
    for (int p2 = 0; p2 < m; ++p2) {
      const int k2 = signed_index(p2, m);
      const double k2n = double(k1) * k1 + double(k2) * k2;
      if (k2n == 0.0) continue;
      coeffs[grid.index(p1, p2)] =
          cplx(0.0, 1.0) / (k2n * double(n_line)) * (double(k2) * S1(p1, p2) - double(k1) * S2(p1, p2));
    }
  }
  coeffs[grid.index(0, 0)] = cplx(area2 / (2.0 * n_line), 0.0);
  return DomainQuadrature(grid, std::move(coeffs), n_line);
}

double integrate(const DomainQuadrature& q, const GridField& u) {
  if (q.grid() != u.grid()) throw std::invalid_argument("integrate: grid mismatch");
  const SpectralField uh = dft_forward(u);
  cplx acc(0.0, 0.0);
  const auto& c = q.raw();
  const auto& h = uh.raw();
  for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * h[i];
  const double tol = 1e-10 * std::max(1.0, std::abs(acc.real()));
  if (std::abs(acc.imag()) > tol)
    throw std::runtime_error(
        "integrate: imaginary residual exceeds tolerance (orientation or symmetry bug?)");
  return acc.real();
}

}  // namespace boxembed
