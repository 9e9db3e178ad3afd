#include "hlab/henon.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>

#include "hlab/io.hpp"

namespace hlab {

cx HenonParams::c_from_curve() const {
  cx m = lambda / 2.0 - a * a / (2.0 * lambda);
  return (1.0 - a * a) * m - m * m;
}

HenonParams make_params(Rational pq, double t, cx a) {
  require(std::abs(t) < 1.0 / (2 * pq.q), "make_params: need |t| < 1/(2q)");
  require(std::abs(a) < 0.5, "make_params: need |a| < 1/2");
  HenonParams H;
  H.pq = pq;
  H.t = t;
  H.a = a;
  H.poly = PolyParams::on_family(pq, t);
  cx lam = H.poly.lambda;
  H.lambda = lam;
  H.c = H.c_from_curve();
  cx a2 = a * a;
  H.w = (-1.0 + lam - lam * lam) / (2.0 * lam) + a2 / (2.0 * lam) * (1.0 - 1.0 / (2.0 * lam));
  H.nu = -a2 / lam;
  H.x_fixed = lam / 2.0 - a2 / (2.0 * lam);
  H.q_fixed = {H.x_fixed, a * H.x_fixed};
  return H;
}

Pt henon(const HenonParams& H, Pt p) { return {p[0] * p[0] + H.c + H.a * p[1], H.a * p[0]}; }

Pt henon_inv(const HenonParams& H, Pt p) {
  if (H.a == 0.0) throw precondition_error("degenerate Jacobian");
  cx u = p[1] / H.a;
  return {u, (p[0] - u * u - H.c) / H.a};
}

std::array<cx, 4> henon_jacobian(const HenonParams& H, Pt p) { return {2.0 * p[0], H.a, H.a, 0.0}; }

std::array<cx, 2> fixed_point_eigenvalues(const HenonParams& H) {
  // mu^2 - 2 x mu - a^2 = 0
  cx b = H.x_fixed, disc = std::sqrt(b * b + H.a * H.a);
  cx r1 = b + disc, r2 = b - disc;
  cx big = std::abs(r1) >= std::abs(r2) ? r1 : r2;
  // small root from the product, avoids cancellation
  cx small = big != 0.0 ? -H.a * H.a / big : 0.0;
  return {big, small};
}

bool in_filtration_plus(Pt p, double r) {
  double ax = std::abs(p[0]);
  return ax >= std::max(std::abs(p[1]), r);
}

Escape classify_forward(const HenonParams& H, Pt p, int max_iter, double r) {
  for (int n = 0; n <= max_iter; ++n) {
    if (in_filtration_plus(p, r)) return {true, n};
    if (n < max_iter) p = henon(H, p);
  }
  return {false, max_iter};
}

void dedup(PointCloud& cloud, double h) {
  std::set<std::array<long long, 4>> seen;
  std::vector<Pt> kept;
  for (auto& p : cloud.points) {
    std::array<long long, 4> key{std::llround(p[0].real() / h), std::llround(p[0].imag() / h),
                                 std::llround(p[1].real() / h), std::llround(p[1].imag() / h)};
    if (seen.insert(key).second) kept.push_back(p);
  }
  cloud.points = std::move(kept);
}

void write_cloud_csv(std::ostream& os, const PointCloud& cloud) {
  csv_header(os, "cloud " + cloud.meta, {"i", "x_re", "x_im", "y_re", "y_im"});
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    auto& p = cloud.points[i];
    os << i << ',' << num(p[0].real()) << ',' << num(p[0].imag()) << ',' << num(p[1].real()) << ','
       << num(p[1].imag()) << '\n';
  }
}

cx EscapeGrid::cell_center(int i, int j) const {
  double h = spacing();
  return window.center + cx(-window.half_width + (j + 0.5) * h, window.half_width - (i + 0.5) * h);
}

double EscapeGrid::escaped_fraction() const {
  size_t e = std::count_if(times.begin(), times.end(), [](int n) { return n >= 0; });
  return double(e) / double(times.size());
}

std::vector<std::uint8_t> EscapeGrid::pixels() const {
  int mx = std::max(1, *std::max_element(times.begin(), times.end()));
  std::vector<std::uint8_t> px(times.size());
  for (size_t k = 0; k < times.size(); ++k)
    px[k] = times[k] < 0 ? 0 : std::uint8_t(255 - 191 * std::min(1.0, std::log1p(times[k]) / std::log1p(mx)));
  return px;
}

EscapeGrid jplus_slice(const HenonParams& H, const Window& win, int res, int max_iter) {
  require(res >= 2 && res <= 8192, "jplus_slice: resolution must be in [2, 8192]");
  EscapeGrid g;
  g.res = res;
  g.window = win;
  g.times.assign(size_t(res) * res, -1);
  std::vector<int> rows(res);
  std::iota(rows.begin(), rows.end(), 0);
  std::for_each(std::execution::par, rows.begin(), rows.end(), [&](int i) {
    for (int j = 0; j < res; ++j) {
      Escape e = classify_forward(H, {g.cell_center(i, j), win.y}, max_iter);
      g.times[size_t(i) * res + j] = e.escaped ? e.n : -1;
    }
  });
  auto esc = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < res && j < res && g.times[size_t(i) * res + j] >= 0;
  };
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      if (g.times[size_t(i) * res + j] >= 0) continue;
      if (esc(i - 1, j) || esc(i + 1, j) || esc(i, j - 1) || esc(i, j + 1))
        g.boundary.points.push_back({g.cell_center(i, j), win.y});
    }
  g.boundary.meta = "jplus-slice res=" + std::to_string(res) + " max_iter=" + std::to_string(max_iter);
  return g;
}

std::vector<Pt> attracting_cycle(const HenonParams& H, Pt z, int q) {
  require(q >= 1, "cycle period must be >= 1");
  for (int it = 0; it < 100; ++it) {
    // F = H^q(z) - z and its Jacobian by the chain rule
    Pt p = z;
    cx j00 = 1, j01 = 0, j10 = 0, j11 = 1;
    for (int k = 0; k < q; ++k) {
      auto d = henon_jacobian(H, p);
      cx n00 = d[0] * j00 + d[1] * j10, n01 = d[0] * j01 + d[1] * j11;
      cx n10 = d[2] * j00 + d[3] * j10, n11 = d[2] * j01 + d[3] * j11;
      j00 = n00, j01 = n01, j10 = n10, j11 = n11;
      p = henon(H, p);
    }
    cx f0 = p[0] - z[0], f1 = p[1] - z[1];
    j00 -= 1.0, j11 -= 1.0;
    cx det = j00 * j11 - j01 * j10;
    if (std::abs(det) < 1e-300) throw numerical_error("cycle Newton: singular Jacobian");
    cx d0 = (j11 * f0 - j01 * f1) / det, d1 = (j00 * f1 - j10 * f0) / det;
    z[0] -= d0;
    z[1] -= d1;
    if (!std::isfinite(std::abs(z[0])) || !std::isfinite(std::abs(z[1]))) break;
    if (std::abs(d0) + std::abs(d1) < 1e-13 * (1 + std::abs(z[0]) + std::abs(z[1]))) {
      std::vector<Pt> orbit{z};
      for (int k = 1; k < q; ++k) orbit.push_back(henon(H, orbit.back()));
      return orbit;
    }
  }
  throw numerical_error("cycle Newton did not converge");
}

}  // namespace hlab
