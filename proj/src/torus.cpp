#include "hlab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <numeric>
#include <ostream>
#include <string>

#include "hlab/io.hpp"

namespace hlab {

cx SolidTorus::eval(int k, cx z) const {
  cx acc = 0;
  for (int m = degree; m >= 0; --m) acc = acc * z + coeff(k, m);
  return acc;
}

cx SolidTorus::deriv(int k, cx z) const {
  cx acc = 0;
  for (int m = degree; m >= 1; --m) acc = acc * z + double(m) * coeff(k, m);
  return acc;
}

cx SolidTorus::node(int j) const { return std::polar(node_radius, 2 * pi * j / nodes()); }

int SolidTorus::index_of(double s) const {
  double u = s - std::floor(s);
  double v = u * n_angles;
  double k = std::round(v);
  if (std::abs(v - k) > 1e-9 * n_angles) throw precondition_error("angle is not on the torus grid");
  return int(k) % n_angles;
}

SolidTorus torus_seed(const HenonParams&, const LoopSample& loop0, int n_angles, int degree) {
  require(int(loop0.size()) == n_angles, "torus_seed: loop size does not match n_angles");
  require(degree >= 1, "torus_seed: degree must be >= 1");
  SolidTorus T;
  T.n_angles = n_angles;
  T.degree = degree;
  T.coeffs.assign(size_t(n_angles) * (degree + 1), 0.0);
  for (int k = 0; k < n_angles; ++k) T.coeffs[size_t(k) * (degree + 1)] = loop0.values[k];
  T.centers = loop0;
  return T;
}

SolidTorus graph_transform(const HenonParams& H, const SolidTorus& T) {
  require(H.a != 0.0, "graph_transform: needs a != 0");
  const int N = T.n_angles, d = T.degree, M = T.nodes();
  SolidTorus out = T;
  out.level = T.level + 1;
  out.centers = pullback_loop(H.poly, T.centers);
  out.gaps.clear();

  std::vector<cx> values(size_t(N) * M);
  std::vector<int> ks(N);
  std::iota(ks.begin(), ks.end(), 0);
  std::vector<std::string> errors(N);
  std::for_each(std::execution::par, ks.begin(), ks.end(), [&](int k) {
    int in = (2 * k) % N;
    cx g = out.centers.values[k];
    for (int j = 0; j < M; ++j) {
      cx z = T.node(j);
      cx X0 = g - H.a * z / (2.0 * g);
      cx X = X0;
      bool ok = false;
      // x^2 + c + a z = phi_{2s}(a x)
      for (int it = 0; it < 50; ++it) {
        cx F = X * X + H.c + H.a * z - T.eval(in, H.a * X);
        cx dF = 2.0 * X - H.a * T.deriv(in, H.a * X);
        cx step = F / dF;
        X -= step;
        if (!std::isfinite(std::abs(X))) break;
        if (std::abs(step) <= 1e-14 * (1 + std::abs(X))) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        errors[k] = "graph_transform: Newton did not converge at s=" + std::to_string(double(k) / N) +
                    " z=(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
        return;
      }
      if (std::abs(X - X0) >= std::abs(X + X0)) {
        errors[k] = "resolution too coarse";
        return;
      }
      values[size_t(k) * M + j] = X;
    }
  });
  for (auto& e : errors)
    if (!e.empty()) throw numerical_error(e);

  // the two preimage disks over the same input disk must be distinct
  for (int k = 0; k < N / 2; ++k)
    for (int j = 0; j < M; ++j)
      if (std::abs(values[size_t(k) * M + j] - values[size_t(k + N / 2) * M + j]) < 1e-8)
        throw numerical_error("resolution too coarse");

  // least-squares fit of degree d on 2d equispaced nodes (exact by orthogonality)
  double gap = 0;
  for (int k = 0; k < N; ++k) {
    for (int m = 0; m <= d; ++m) {
      cx acc = 0;
      for (int j = 0; j < M; ++j) acc += values[size_t(k) * M + j] * std::polar(1.0, -2 * pi * double(j) * m / M);
      out.coeffs[size_t(k) * (d + 1) + m] = acc / double(M) / std::pow(T.node_radius, m);
    }
  }
  // Cauchy gap between consecutive fitted tori
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < M; ++j) gap = std::max(gap, std::abs(out.eval(k, T.node(j)) - T.eval(k, T.node(j))));
  out.gaps = T.gaps;
  out.gaps.push_back(gap);
  return out;
}

SolidTorus torus_fixed_point(const HenonParams& H, int n_iters, int n_angles, int degree) {
  require(n_iters >= 1, "torus_fixed_point: n_iters must be >= 1");
  SolidTorus T = torus_seed(H, base_equipotential(H.poly, n_angles), n_angles, degree);
  for (int n = 0; n < n_iters; ++n) T = graph_transform(H, T);
  return T;
}

double torus_distance(const SolidTorus& a, const SolidTorus& b) {
  require(a.n_angles == b.n_angles, "torus_distance: angle counts differ");
  double m = 0;
  for (int k = 0; k < a.n_angles; ++k)
    for (int j = 0; j < a.nodes(); ++j) m = std::max(m, std::abs(a.eval(k, a.node(j)) - b.eval(k, a.node(j))));
  return m;
}

double separation(const SolidTorus& T) {
  double best = 1e300;
  for (int k = 0; k < T.n_angles / 2; ++k) {
    double sup = 0;
    for (int j = 0; j < T.nodes(); ++j)
      sup = std::max(sup, std::abs(T.eval(k, T.node(j)) - T.eval(k + T.n_angles / 2, T.node(j))));
    best = std::min(best, sup);
  }
  return best;
}

double first_order_residual(const HenonParams& H, const SolidTorus& T, double radius) {
  if (radius < 0) radius = T.node_radius;
  double m = 0;
  for (int k = 0; k < T.n_angles; ++k) {
    cx g = T.centers.values[k];
    for (int j = 0; j < T.nodes(); ++j) {
      cx z = radius / T.node_radius * T.node(j);
      m = std::max(m, std::abs(T.eval(k, z) - g + H.a * z / (2.0 * g)));
    }
  }
  return m;
}

double max_slope(const SolidTorus& T) {
  double m = 0;
  for (int k = 0; k < T.n_angles; ++k)
    for (int j = 0; j < T.nodes(); ++j) m = std::max(m, std::abs(T.deriv(k, T.node(j))));
  return m;
}

SigmaPoint sigma(const HenonParams& H, const SolidTorus& fstar, SigmaPoint p) {
  int k = fstar.index_of(p.s);
  cx z = H.a * fstar.eval(k, p.z);
  if (std::abs(z) >= fstar.r) throw numerical_error("image left D_r");
  double s2 = 2 * (p.s - std::floor(p.s));
  return {s2 - std::floor(s2), z};
}

Pt fstar_point(const SolidTorus& fstar, SigmaPoint p) { return {fstar.eval(fstar.index_of(p.s), p.z), p.z}; }

static cx seed_z(double radius, int i, int m) {
  // spread over the disk: radii sqrt-uniform, golden-angle turns
  double rho = radius * std::sqrt((i + 0.5) / m);
  return std::polar(rho, 2 * pi * 0.6180339887498949 * i);
}

PointCloud julia_from_sigma(const HenonParams& H, const SolidTorus& fstar, int depth, int seeds_per_angle) {
  require(depth >= 0 && seeds_per_angle >= 1, "julia_from_sigma: bad depth or seed count");
  PointCloud cloud;
  for (int k = 0; k < fstar.n_angles; ++k)
    for (int i = 0; i < seeds_per_angle; ++i) {
      SigmaPoint p{double(k) / fstar.n_angles, seed_z(fstar.node_radius, i, seeds_per_angle)};
      for (int n = 0; n < depth; ++n) p = sigma(H, fstar, p);
      cloud.points.push_back(fstar_point(fstar, p));
    }
  cloud.meta = "julia-from-sigma angles=" + std::to_string(fstar.n_angles) + " depth=" + std::to_string(depth);
  return cloud;
}

double semiconjugacy_residual(const HenonParams& H, const SolidTorus& fstar, int sample_count) {
  require(sample_count >= 1, "semiconjugacy_residual: need samples");
  double m = 0;
  for (int i = 0; i < sample_count; ++i) {
    int k = int((long long)i * fstar.n_angles / sample_count) % fstar.n_angles;
    SigmaPoint p{double(k) / fstar.n_angles, seed_z(fstar.node_radius, i % 64, 64)};
    Pt lhs = henon(H, fstar_point(fstar, p));
    Pt rhs = fstar_point(fstar, sigma(H, fstar, p));
    m = std::max(m, std::hypot(std::abs(lhs[0] - rhs[0]), std::abs(lhs[1] - rhs[1])));
  }
  return m;
}

Pt model_psi(const PolyParams& P, double eps, Pt p) {
  cx zeta = p[0], z = p[1];
  if (zeta == 0.0) throw precondition_error("model_psi: zeta = 0");
  return {P(zeta), eps * zeta - eps * eps * z / (2.0 * zeta)};
}

PointCloud model_cloud(const PolyParams& P, double eps, const LoopSample& loop, int depth, int seeds_per_point,
                       double r) {
  PointCloud cloud;
  for (size_t k = 0; k < loop.size(); ++k)
    for (int i = 0; i < seeds_per_point; ++i) {
      Pt p{loop.values[k], seed_z(0.9 * r, i, seeds_per_point)};
      for (int n = 0; n < depth; ++n) p = model_psi(P, eps, p);
      cloud.points.push_back({p[0] - eps * p[1] / (2.0 * p[0]), p[1]});
    }
  cloud.meta = "model-psi eps=" + num(eps) + " depth=" + std::to_string(depth);
  return cloud;
}

void write_torus_csv(std::ostream& os, const SolidTorus& T) {
  csv_header(os, "torus", {"level", "s", "coeff_index", "re", "im"});
  for (int k = 0; k < T.n_angles; ++k)
    for (int m = 0; m <= T.degree; ++m)
      os << T.level << ',' << num(double(k) / T.n_angles) << ',' << m << ',' << num(T.coeff(k, m).real()) << ','
         << num(T.coeff(k, m).imag()) << '\n';
}

}  // namespace hlab
