#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace boxembed {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform m x m periodic grid on the box [-pi,pi)^2 with the trapezoidal
/// quadrature weight (2pi/m)^2 attached to every node. Immutable; safe to
/// share across threads.
class Grid2 {
 public:
  explicit Grid2(int m);

  int m() const noexcept { return m_; }
  std::size_t size() const noexcept { return std::size_t(m_) * std::size_t(m_); }
  double spacing() const noexcept { return h_; }
  /// Quadrature weight of a single 2D node.
  double weight() const noexcept { return h_ * h_; }
  /// Axis coordinate -pi + 2*pi*j/m.
  double node(int j) const noexcept { return axis_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& axis() const noexcept { return axis_; }
  std::size_t index(int j1, int j2) const noexcept {
    return std::size_t(j1) * std::size_t(m_) + std::size_t(j2);
  }

  friend bool operator==(const Grid2& a, const Grid2& b) noexcept { return a.m_ == b.m_; }
  friend bool operator!=(const Grid2& a, const Grid2& b) noexcept { return a.m_ != b.m_; }

 private:
  int m_;
  double h_;
  std::vector<double> axis_;
};

/// Builds the grid; m must be even and at least 4.
Grid2 make_grid(int m);

/// Map between natural (FFT) order p in [0,m) and the signed spectral index
/// k in {-m/2, ..., m/2-1}.
inline int signed_index(int p, int m) noexcept { return p < m / 2 ? p : p - m; }
inline int natural_index(int k, int m) noexcept { return k >= 0 ? k : k + m; }

/// Complex-valued samples on a Grid2, row-major over (j1, j2).
class GridField {
 public:
  explicit GridField(const Grid2& grid) : grid_(grid), v_(grid.size(), cplx(0.0, 0.0)) {}
  GridField(const Grid2& grid, std::vector<cplx> values);

  /// Samples f(x1, x2) at every node; f may return double or cplx.
  template <class F>
  static GridField sample(const Grid2& grid, F&& f) {
    GridField out(grid);
    const int m = grid.m();
    for (int j1 = 0; j1 < m; ++j1)
      for (int j2 = 0; j2 < m; ++j2)
        out.v_[grid.index(j1, j2)] = cplx(f(grid.node(j1), grid.node(j2)));
    return out;
  }

  const Grid2& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return v_.size(); }
  cplx& operator[](std::size_t i) noexcept { return v_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return v_[i]; }
  cplx& at(int j1, int j2) noexcept { return v_[grid_.index(j1, j2)]; }
  const cplx& at(int j1, int j2) const noexcept { return v_[grid_.index(j1, j2)]; }
  std::vector<cplx>& values() noexcept { return v_; }
  const std::vector<cplx>& values() const noexcept { return v_; }
  cplx* data() noexcept { return v_.data(); }
  const cplx* data() const noexcept { return v_.data(); }

 private:
  Grid2 grid_;
  std::vector<cplx> v_;
};

/// Spectral coefficients indexed by k in {-m/2,...,m/2-1}^2. Stored in
/// natural FFT order internally; all public access goes through the signed
/// index.
class SpectralField {
 public:
  explicit SpectralField(const Grid2& grid) : grid_(grid), c_(grid.size(), cplx(0.0, 0.0)) {}
  SpectralField(const Grid2& grid, std::vector<cplx> coeffs);

  const Grid2& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return c_.size(); }
  cplx& coeff(int k1, int k2) noexcept {
    const int m = grid_.m();
    return c_[grid_.index(natural_index(k1, m), natural_index(k2, m))];
  }
  const cplx& coeff(int k1, int k2) const noexcept {
    const int m = grid_.m();
    return c_[grid_.index(natural_index(k1, m), natural_index(k2, m))];
  }
  /// Natural-order storage (p1*m + p2); use signed_index to interpret.
  std::vector<cplx>& raw() noexcept { return c_; }
  const std::vector<cplx>& raw() const noexcept { return c_; }

 private:
  Grid2 grid_;
  std::vector<cplx> c_;
};

/// Orthonormal Fourier basis function e_k(x) = (2pi)^{-1} exp(i k.x).
cplx eval_basis(int k1, int k2, double x1, double x2);

/// Discrete duality pairing sum_j u_j v_j q_j (no conjugation). The inner
/// product (u|v) is pairing(u, conj of v).
cplx pairing(const GridField& u, const GridField& v);

/// Forward transform: coefficients c_k = pairing(u, conj e^m_k), so that the
/// transform of e^m_k is the indicator of k and Parseval holds exactly with
/// the plain Euclidean product on coefficients.
SpectralField dft_forward(const GridField& u);

/// Inverse transform: u_j = sum_k c_k e_k(x_j). Exact inverse of dft_forward.
GridField dft_inverse(const SpectralField& c);

/// Phase table exp(i * signed_index(p) * x) for p = 0..m-1, natural order.
std::vector<cplx> axis_phase_table(int m, double x);

/// Pointwise complex conjugate.
GridField conj_field(const GridField& u);

}  // namespace boxembed
