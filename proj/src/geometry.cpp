#include "boxembed/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace boxembed {

namespace {

constexpr int kDenseSamples = 2048;

double norm2(const Point& p) { return std::hypot(p.x, p.y); }

}  // namespace

BoundaryCurve BoundaryCurve::circle(Point center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("BoundaryCurve::circle: radius must be positive");
  BoundaryCurve c;
  c.is_circle_ = true;
  c.center_ = center;
  c.radius_ = radius;
  c.gamma_ = [center, radius](double t) {
    return Point{center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
  };
  c.gamma_dot_ = [radius](double t) {
    return Point{-radius * std::sin(t), radius * std::cos(t)};
  };
  c.build_series(kDenseSamples);
  return c;
}

BoundaryCurve BoundaryCurve::parametric(std::function<Point(double)> gamma,
                                        std::function<Point(double)> gamma_dot) {
  if (!gamma) throw std::invalid_argument("BoundaryCurve::parametric: missing parametrization");
  BoundaryCurve c;
  c.gamma_ = std::move(gamma);
  c.gamma_dot_ = std::move(gamma_dot);
  c.build_series(kDenseSamples);
  return c;
}

BoundaryCurve BoundaryCurve::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("BoundaryCurve::from_file: cannot open " + path);
  std::vector<double> ts;
  std::vector<Point> pts;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream row(line);
    double t, x, y;
    if (row >> t >> x >> y) {
      ts.push_back(t);
      pts.push_back({x, y});
    }
  }
  const std::size_t n = pts.size();
  if (n < 8) throw std::runtime_error("BoundaryCurve::from_file: need at least 8 sample rows");
  // Validate equispacing and rescale the parameter to [0, 2pi).
  const double dt = ts[1] - ts[0];
  for (std::size_t j = 1; j < n; ++j)
    if (std::abs((ts[j] - ts[j - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw std::runtime_error("BoundaryCurve::from_file: samples must be equispaced in t");

  // Fourier coefficients of gamma = x + i y from the samples (plain DFT; the
  // row counts are small).
  std::vector<cplx> coef(n, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -kTwoPi * double(k) * double(j) / double(n);
      acc += cplx(pts[j].x, pts[j].y) * std::polar(1.0, ang);
    }
    coef[k] = acc / double(n);
  }
  const int nn = int(n);
  auto eval = [coef, nn](double t, bool derivative) {
    cplx z(0.0, 0.0);
    for (int p = 0; p < nn; ++p) {
      const int k = signed_index(p, nn);
      cplx term = coef[std::size_t(p)] * std::polar(1.0, k * t);
      if (derivative) term *= cplx(0.0, k);
      z += term;
    }
    return Point{z.real(), z.imag()};
  };
  BoundaryCurve c;
  c.gamma_ = [eval](double t) { return eval(t, false); };
  c.gamma_dot_ = [eval](double t) { return eval(t, true); };
  c.build_series(kDenseSamples);
  return c;
}

void BoundaryCurve::build_series(int n_samples) {
  // Dense polyline for the interior test plus a spectral derivative fallback.
  polyline_.resize(std::size_t(n_samples));
  for (int j = 0; j < n_samples; ++j) polyline_[std::size_t(j)] = gamma_(kTwoPi * j / n_samples);

  if (!gamma_dot_) {
    const int n = n_samples;
    std::vector<cplx> coef(std::size_t(n), cplx(0.0, 0.0));
    for (int k = 0; k < n; ++k) {
      cplx acc(0.0, 0.0);
      for (int j = 0; j < n; ++j)
        acc += cplx(polyline_[std::size_t(j)].x, polyline_[std::size_t(j)].y) *
               std::polar(1.0, -kTwoPi * double(k) * j / n);
      coef[std::size_t(k)] = acc / double(n);
    }
    series_ = std::move(coef);
    auto series = series_;
    const int nn = n;
    gamma_dot_ = [series, nn](double t) {
      cplx z(0.0, 0.0);
      for (int p = 0; p < nn; ++p) {
        const int k = signed_index(p, nn);
        z += series[std::size_t(p)] * cplx(0.0, k) * std::polar(1.0, k * t);
      }
      return Point{z.real(), z.imag()};
    };
  }
}

Point BoundaryCurve::at(double t) const { return gamma_(t); }
Point BoundaryCurve::velocity(double t) const { return gamma_dot_(t); }

bool BoundaryCurve::contains(const Point& p) const {
  if (is_circle_) {
    return std::hypot(p.x - center_.x, p.y - center_.y) < radius_;
  }
  // Even-odd crossing test against the dense polyline.
  bool inside = false;
  const std::size_t n = polyline_.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Point& a = polyline_[j];
    const Point& b = polyline_[(j + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

BoundarySample sample_boundary(const BoundaryCurve& curve, int n, double delta) {
  if (n < 8) throw std::invalid_argument("sample_boundary: need at least 8 points");
  if (delta < 0.0) throw std::invalid_argument("sample_boundary: offset must be nonnegative");

  // Orientation check: the signed area of a counterclockwise curve is positive.
  double area2 = 0.0;
  const int na = 1024;
  for (int j = 0; j < na; ++j) {
    const double t = kTwoPi * j / na;
    const Point g = curve.at(t), gd = curve.velocity(t);
    area2 += g.x * gd.y - g.y * gd.x;
  }
  if (area2 <= 0.0)
    throw std::invalid_argument("sample_boundary: curve must be parametrized counterclockwise");

  BoundarySample s;
  s.n = n;
  s.offset_distance = delta;
  s.params.resize(std::size_t(n));
  s.points.resize(std::size_t(n));
  s.normals.resize(std::size_t(n));
  s.tangents.resize(std::size_t(n));
  s.offsets.resize(std::size_t(n));
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const Point y = curve.at(t);
    const Point v = curve.velocity(t);
    const double sp = norm2(v);
    if (!(sp > 0.0)) throw std::invalid_argument("sample_boundary: curve is not regular");
    const Point tau{v.x / sp, v.y / sp};
    const Point nu{tau.y, -tau.x};  // outward for counterclockwise curves
    const Point yt{y.x + delta * nu.x, y.y + delta * nu.y};
    if (std::abs(yt.x) >= kPi || std::abs(yt.y) >= kPi)
      throw std::runtime_error("sample_boundary: offset point leaves the box");
    if (delta > 0.0 && curve.contains(yt))
      throw std::runtime_error("sample_boundary: offset point re-enters the domain");
    s.params[std::size_t(j)] = t;
    s.points[std::size_t(j)] = y;
    s.tangents[std::size_t(j)] = tau;
    s.normals[std::size_t(j)] = nu;
    s.offsets[std::size_t(j)] = yt;
  }
  return s;
}

BoundarySample nearest_grid_snap(const BoundarySample& sample, const Grid2& grid) {
  BoundarySample out = sample;
  const double h = grid.spacing();
  const int m = grid.m();
  double max_disp = 0.0;
  for (auto& p : out.offsets) {
    const auto snap1 = [&](double x) {
      long j = std::lround((x + kPi) / h);
      const double node = -kPi + h * double(j);
      // Wrap index into [0, m); the displacement is measured periodically.
      long jm = ((j % m) + m) % m;
      return std::pair<double, double>(grid.node(int(jm)), std::abs(x - node));
    };
    const auto [nx, dx] = snap1(p.x);
    const auto [ny, dy] = snap1(p.y);
    max_disp = std::max(max_disp, std::hypot(dx, dy));
    p = Point{nx, ny};
  }
  out.max_snap_displacement = max_disp;
  out.snapped = true;
  return out;
}

}  // namespace boxembed
