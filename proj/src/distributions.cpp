#include "boxembed/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "fft_engine.hpp"

namespace boxembed {

namespace {

double wrap_coord(double x) {
  // Periodic representative in [-pi, pi).
  double y = std::fmod(x + kPi, kTwoPi);
  if (y < 0) y += kTwoPi;
  return y - kPi;
}

double sin_half_sq(double t) {
  const double s = std::sin(0.5 * t);
  return s * s;
}

}  // namespace

void TestFunctionSpec::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("TestFunctionSpec: alpha must be positive");
  if (kind == TestFunctionKind::NormalDerivative) {
    const double n2 = normal[0] * normal[0] + normal[1] * normal[1];
    if (std::abs(n2 - 1.0) > 1e-10)
      throw std::invalid_argument("TestFunctionSpec: normal must be a unit vector");
  }
}

SpectralDistribution delta(const Grid2& grid, double x1, double x2) {
  const int m = grid.m();
  const double c1 = wrap_coord(x1), c2 = wrap_coord(x2);
  const auto p1 = axis_phase_table(m, c1);  // e^{i k x1}
  const auto p2 = axis_phase_table(m, c2);
  SpectralDistribution d(grid);
  auto& c = d.raw();
  const double scale = 1.0 / kTwoPi;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) c[grid.index(a, b)] = scale * p1[std::size_t(a)] * p2[std::size_t(b)];
  return d;
}

SpectralDistribution delta_derivative(const Grid2& grid, double x1, double x2, int a1, int a2) {
  if (a1 < 0 || a2 < 0 || a1 + a2 > 2)
    throw std::invalid_argument("delta_derivative: multi-index order must be at most 2");
  SpectralDistribution d = delta(grid, x1, x2);
  const int m = grid.m();
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      cplx f(1.0, 0.0);
      for (int r = 0; r < a1; ++r) f *= cplx(0.0, signed_index(p, m));
      for (int r = 0; r < a2; ++r) f *= cplx(0.0, signed_index(q, m));
      d.raw()[grid.index(p, q)] *= f;
    }
  }
  return d;
}

SpectralDistribution delta_derivative(const Grid2& grid, double x1, double x2,
                                      const std::array<double, 2>& direction) {
  const double n2 = direction[0] * direction[0] + direction[1] * direction[1];
  if (n2 < 1e-28) throw std::invalid_argument("delta_derivative: zero direction vector");
  SpectralDistribution d = delta(grid, x1, x2);
  const int m = grid.m();
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      const double kd = direction[0] * signed_index(p, m) + direction[1] * signed_index(q, m);
      d.raw()[grid.index(p, q)] *= cplx(0.0, kd);
    }
  }
  return d;
}

cplx act(const SpectralDistribution& u, const GridField& phi) {
  if (u.grid() != phi.grid()) throw std::invalid_argument("act: grid mismatch");
  return act(u, dft_forward(phi));
}

cplx act(const SpectralDistribution& u, const SpectralField& phi_hat) {
  if (u.grid() != phi_hat.grid()) throw std::invalid_argument("act: grid mismatch");
  cplx acc(0.0, 0.0);
  const auto& a = u.raw();
  const auto& b = phi_hat.raw();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

GridField to_grid_field(const SpectralDistribution& u) {
  const int m = u.grid().m();
  std::vector<cplx> tmp(u.raw());
  for (int p1 = 0; p1 < m; ++p1)
    for (int p2 = 0; p2 < m; ++p2)
      if ((p1 + p2) & 1) tmp[u.grid().index(p1, p2)] = -tmp[u.grid().index(p1, p2)];
  GridField out(u.grid());
  // Synthesis with the conjugate basis is the forward-sign transform.
  detail::fft2(m, tmp.data(), out.data(), true);
  for (auto& z : out.values()) z /= kTwoPi;
  return out;
}

GridField test_function(const Grid2& grid, const TestFunctionSpec& spec) {
  spec.validate();
  const int m = grid.m();
  const double c1 = spec.center[0], c2 = spec.center[1];

  switch (spec.kind) {
    case TestFunctionKind::Dirac:
      return to_grid_field(delta(grid, c1, c2));

    case TestFunctionKind::Symmetric: {
      // Separable periodic bump: exp(-alpha [sin^2((z1-c1)/2) + sin^2((z2-c2)/2)]).
      std::vector<double> e1(std::size_t(m)), e2(std::size_t(m));
      for (int j = 0; j < m; ++j) {
        e1[std::size_t(j)] = std::exp(-spec.alpha * sin_half_sq(grid.node(j) - c1));
        e2[std::size_t(j)] = std::exp(-spec.alpha * sin_half_sq(grid.node(j) - c2));
      }
      GridField out(grid);
      for (int j1 = 0; j1 < m; ++j1)
        for (int j2 = 0; j2 < m; ++j2)
          out.at(j1, j2) = e1[std::size_t(j1)] * e2[std::size_t(j2)];
      return out;
    }

    case TestFunctionKind::NormalDerivative: {
      // nu . grad of the bump: d/dz_i = -(alpha/2) sin(z_i - c_i) * bump.
      const double n1 = spec.normal[0], n2 = spec.normal[1];
      std::vector<double> e1(std::size_t(m)), e2(std::size_t(m)), s1(std::size_t(m)), s2(std::size_t(m));
      for (int j = 0; j < m; ++j) {
        const double z = grid.node(j);
        e1[std::size_t(j)] = std::exp(-spec.alpha * sin_half_sq(z - c1));
        e2[std::size_t(j)] = std::exp(-spec.alpha * sin_half_sq(z - c2));
        s1[std::size_t(j)] = std::sin(z - c1);
        s2[std::size_t(j)] = std::sin(z - c2);
      }
      GridField out(grid);
      const double half_alpha = 0.5 * spec.alpha;
      for (int j1 = 0; j1 < m; ++j1) {
        for (int j2 = 0; j2 < m; ++j2) {
          const double phi = e1[std::size_t(j1)] * e2[std::size_t(j2)];
          out.at(j1, j2) =
              -half_alpha * (n1 * s1[std::size_t(j1)] + n2 * s2[std::size_t(j2)]) * phi;
        }
      }
      return out;
    }
  }
  throw std::logic_error("test_function: unknown kind");
}

GridField padding_psi(const Grid2& grid, PaddingStyle style) {
  const int m = grid.m();
  GridField out(grid);
  if (style == PaddingStyle::GaussianCorner) {
    std::vector<double> s(std::size_t(m));
    for (int j = 0; j < m; ++j) s[std::size_t(j)] = sin_half_sq(grid.node(j) - kPi);
    for (int j1 = 0; j1 < m; ++j1)
      for (int j2 = 0; j2 < m; ++j2)
        out.at(j1, j2) = std::exp(-200.0 * s[std::size_t(j1)] * s[std::size_t(j2)]);
  } else {
    const double r0sq = (kPi - 0.2) * (kPi - 0.2);
    for (int j1 = 0; j1 < m; ++j1) {
      for (int j2 = 0; j2 < m; ++j2) {
        const double x = grid.node(j1), y = grid.node(j2);
        out.at(j1, j2) = 0.5 * (1.0 + std::tanh(-2.5 * (x * x + y * y - r0sq)));
      }
    }
  }
  return out;
}

namespace {

// Mean ratio u^_00 / psi^_00 shared by both projection overloads; the zero
// coefficients are proportional to the plain sample sums.
cplx mean_ratio(cplx usum, const GridField& psi) {
  cplx psum(0.0, 0.0);
  for (const auto& z : psi.values()) psum += z;
  const double scale = kTwoPi / double(psi.size());
  if (std::abs(psum) * scale < 1e-12)
    throw std::invalid_argument("project_mean_zero: psi has (numerically) zero mean");
  return usum / psum;
}

}  // namespace

GridField project_mean_zero(const GridField& u, const GridField& psi) {
  if (u.grid() != psi.grid()) throw std::invalid_argument("project_mean_zero: grid mismatch");
  cplx usum(0.0, 0.0);
  for (const auto& z : u.values()) usum += z;
  const cplx c = mean_ratio(usum, psi);
  GridField out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - c * psi[i];
  return out;
}

SpectralDistribution project_mean_zero(const SpectralDistribution& u, const GridField& psi) {
  if (u.grid() != psi.grid()) throw std::invalid_argument("project_mean_zero: grid mismatch");
  const int m = u.grid().m();
  const SpectralField psi_hat = dft_forward(psi);
  if (std::abs(psi_hat.coeff(0, 0)) < 1e-12)
    throw std::invalid_argument("project_mean_zero: psi has (numerically) zero mean");
  const cplx c = u.tilde(0, 0) / psi_hat.coeff(0, 0);
  SpectralDistribution out = u;
  // tilde coefficients of the function psi are its hat coefficients at the
  // negated (wrapped) index.
  for (int p1 = 0; p1 < m; ++p1) {
    for (int p2 = 0; p2 < m; ++p2) {
      const int k1 = signed_index(p1, m), k2 = signed_index(p2, m);
      const cplx psi_tilde = psi_hat.coeff(k1 == -m / 2 ? -m / 2 : -k1,
                                           k2 == -m / 2 ? -m / 2 : -k2);
      out.raw()[u.grid().index(p1, p2)] -= c * psi_tilde;
    }
  }
  return out;
}

}  // namespace boxembed
