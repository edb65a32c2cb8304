#pragma once

#include <functional>
#include <string>

#include "boxembed/spectral_core.hpp"

namespace boxembed {

/// Fourier multiplier a(k) defining a periodic operator applied as
/// F^{-1} diag[a(k)] F. Evaluated at any signed integer index.
struct Symbol {
  std::function<cplx(int, int)> a;
  std::string name;
};

Symbol identity_symbol();
Symbol laplacian_symbol();  // |k|^2 (the negative periodic Laplacian)
/// Solve symbol for the periodic Poisson problem on mean-zero data:
/// 0 at k = 0, 1/|k|^2 otherwise.
Symbol green_dirichlet_symbol();
/// Solve symbol for the shifted operator 1 - Laplacian: 1/(1+|k|^2).
Symbol green_neumann_symbol();

/// Spectral multiplication u -> F^{-1} diag[a(k)] F u.
GridField apply_symbol(const Symbol& sym, const GridField& u);

/// Cyclic translation by whole grid cells: out(x_j) = u(x_{j-s}).
GridField translate(const GridField& u, int s1, int s2);

/// Truncated kernel evaluator for a symbol on a fixed grid: the kernel is
/// evaluable at arbitrary (off-grid) point pairs, with error coming from
/// series truncation only. Supports x-dependent symbols a(x, k) through the
/// extended constructor (kernel evaluation needs no transform).
class KernelEvaluator {
 public:
  KernelEvaluator(Symbol sym, const Grid2& grid);
  KernelEvaluator(std::function<cplx(int, int, double, double)> a_of_xk, std::string name,
                  const Grid2& grid);

  const Grid2& grid() const noexcept { return grid_; }
  const std::string& name() const noexcept { return name_; }
  cplx a(int k1, int k2, double x1, double x2) const { return a_(k1, k2, x1, x2); }

 private:
  std::function<cplx(int, int, double, double)> a_;
  std::string name_;
  Grid2 grid_;
};

/// k^m(x, y) = sum_{k in the truncation set} a(x, k) e_k(x) e_k(-y).
cplx kernel_eval(const KernelEvaluator& ke, double x1, double x2, double y1, double y2);

}  // namespace boxembed
