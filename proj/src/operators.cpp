#include "boxembed/operators.hpp"

#include <stdexcept>
#include <utility>

#include "fft_engine.hpp"

namespace boxembed {

Symbol identity_symbol() {
  return {[](int, int) { return cplx(1.0, 0.0); }, "identity"};
}

Symbol laplacian_symbol() {
  return {[](int k1, int k2) { return cplx(double(k1) * k1 + double(k2) * k2, 0.0); },
          "laplacian"};
}

Symbol green_dirichlet_symbol() {
  return {[](int k1, int k2) {
            const double k2n = double(k1) * k1 + double(k2) * k2;
            return k2n == 0.0 ? cplx(0.0, 0.0) : cplx(1.0 / k2n, 0.0);
          },
          "green_dirichlet"};
}

Symbol green_neumann_symbol() {
  return {[](int k1, int k2) {
            return cplx(1.0 / (1.0 + double(k1) * k1 + double(k2) * k2), 0.0);
          },
          "green_neumann"};
}

GridField apply_symbol(const Symbol& sym, const GridField& u) {
  const int m = u.grid().m();
  std::vector<cplx> work(u.size());
  detail::fft2(m, u.data(), work.data(), true);
  for (int p1 = 0; p1 < m; ++p1)
    for (int p2 = 0; p2 < m; ++p2)
      work[u.grid().index(p1, p2)] *= sym.a(signed_index(p1, m), signed_index(p2, m));
  GridField out(u.grid());
  detail::fft2(m, work.data(), out.data(), false);
  const double inv = 1.0 / double(u.size());
  for (auto& z : out.values()) z *= inv;
  return out;
}

GridField translate(const GridField& u, int s1, int s2) {
  const int m = u.grid().m();
  auto wrap = [m](int j) {
    int r = j % m;
    return r < 0 ? r + m : r;
  };
  GridField out(u.grid());
  for (int j1 = 0; j1 < m; ++j1)
    for (int j2 = 0; j2 < m; ++j2) out.at(j1, j2) = u.at(wrap(j1 - s1), wrap(j2 - s2));
  return out;
}

KernelEvaluator::KernelEvaluator(Symbol sym, const Grid2& grid)
    : a_([f = std::move(sym.a)](int k1, int k2, double, double) { return f(k1, k2); }),
      name_(std::move(sym.name)),
      grid_(grid) {}

KernelEvaluator::KernelEvaluator(std::function<cplx(int, int, double, double)> a_of_xk,
                                 std::string name, const Grid2& grid)
    : a_(std::move(a_of_xk)), name_(std::move(name)), grid_(grid) {}

cplx kernel_eval(const KernelEvaluator& ke, double x1, double x2, double y1, double y2) {
  const int m = ke.grid().m();
  const auto p1 = axis_phase_table(m, x1 - y1);  // e^{i k (x1-y1)}
  const auto p2 = axis_phase_table(m, x2 - y2);
  cplx acc(0.0, 0.0);
  for (int a = 0; a < m; ++a) {
    const int k1 = signed_index(a, m);
    cplx row(0.0, 0.0);
    for (int b = 0; b < m; ++b)
      row += ke.a(k1, signed_index(b, m), x1, x2) * p2[std::size_t(b)];
    acc += p1[std::size_t(a)] * row;
  }
  return acc / (kTwoPi * kTwoPi);
}

}  // namespace boxembed
