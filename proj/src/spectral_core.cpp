#include "boxembed/spectral_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "fft_engine.hpp"

namespace boxembed {

Grid2::Grid2(int m) : m_(m), h_(kTwoPi / m), axis_(std::size_t(m)) {
  for (int j = 0; j < m; ++j) axis_[std::size_t(j)] = -kPi + h_ * j;
}

Grid2 make_grid(int m) {
  if (m < 4) throw std::invalid_argument("make_grid: m must be at least 4, got " + std::to_string(m));
  if (m % 2 != 0) throw std::invalid_argument("make_grid: m must be even, got " + std::to_string(m));
  return Grid2(m);
}

GridField::GridField(const Grid2& grid, std::vector<cplx> values)
    : grid_(grid), v_(std::move(values)) {
  if (v_.size() != grid_.size())
    throw std::invalid_argument("GridField: value count does not match the grid");
}

SpectralField::SpectralField(const Grid2& grid, std::vector<cplx> coeffs)
    : grid_(grid), c_(std::move(coeffs)) {
  if (c_.size() != grid_.size())
    throw std::invalid_argument("SpectralField: coefficient count does not match the grid");
}

cplx eval_basis(int k1, int k2, double x1, double x2) {
  return std::polar(1.0 / kTwoPi, k1 * x1 + k2 * x2);
}

cplx pairing(const GridField& u, const GridField& v) {
  if (u.grid() != v.grid()) throw std::invalid_argument("pairing: fields live on different grids");
  cplx acc(0.0, 0.0);
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) acc += u[i] * v[i];
  return acc * u.grid().weight();
}

SpectralField dft_forward(const GridField& u) {
  const int m = u.grid().m();
  SpectralField out(u.grid());
  detail::fft2(m, u.data(), out.raw().data(), true);
  const double scale = kTwoPi / (double(m) * double(m));
  auto& c = out.raw();
  for (int p1 = 0; p1 < m; ++p1) {
    for (int p2 = 0; p2 < m; ++p2) {
      const double s = ((p1 + p2) & 1) ? -scale : scale;
      c[u.grid().index(p1, p2)] *= s;
    }
  }
  return out;
}

GridField dft_inverse(const SpectralField& c) {
  const int m = c.grid().m();
  std::vector<cplx> tmp(c.raw());
  for (int p1 = 0; p1 < m; ++p1)
    for (int p2 = 0; p2 < m; ++p2)
      if ((p1 + p2) & 1) tmp[c.grid().index(p1, p2)] = -tmp[c.grid().index(p1, p2)];
  GridField out(c.grid());
  detail::fft2(m, tmp.data(), out.data(), false);
  for (auto& z : out.values()) z /= kTwoPi;
  return out;
}

std::vector<cplx> axis_phase_table(int m, double x) {
  std::vector<cplx> t(std::size_t(m));
  for (int p = 0; p < m; ++p) t[std::size_t(p)] = std::polar(1.0, signed_index(p, m) * x);
  return t;
}

GridField conj_field(const GridField& u) {
  GridField out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::conj(u[i]);
  return out;
}

}  // namespace boxembed
