#include "hlab/cones.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <numeric>
#include <ostream>
#include <random>

#include "hlab/io.hpp"
#include "hlab/torus.hpp"

namespace hlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::MARGINAL: return "MARGINAL";
    default: return "EXCLUDED";
  }
}

std::vector<Pt> sector_samples(const HenonParams& H, int count, double rho, double r_loc, unsigned long long seed) {
  int q = H.pq.q;
  double hi = std::pow(rho, q);
  double lo = H.t < 0 ? repel_radius(q, H.t) : 1e-4 * hi;
  require(lo < hi, "sector_samples: repelling annulus is empty for this rho");
  double half = std::atan(1 / eps0) * 0.999;  // half-opening of the sector in the x^q plane
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0, 1);
  std::vector<Pt> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    double m = lo * std::pow(hi / lo, u01(rng));  // log-uniform in |x^q|
    m = std::clamp(m, lo * (1 + 1e-9), hi * (1 - 1e-9));
    double ang = (2 * u01(rng) - 1) * half;
    int j = int(u01(rng) * q) % q;
    cx x = std::polar(std::pow(m, 1.0 / q), (ang + 2 * pi * j) / q);
    cx y = std::polar(r_loc * std::sqrt(u01(rng)), 2 * pi * u01(rng));
    out.push_back({x, y});
  }
  return out;
}

namespace {

struct Jet {
  TruncSeries2 f0x, f0y, f1x, f1y;
  explicit Jet(const Map2& f) : f0x(f[0].dx()), f0y(f[0].dy()), f1x(f[1].dx()), f1y(f[1].dy()) {}
  std::array<cx, 4> at(cx x, cx y) const { return {f0x.eval(x, y), f0y.eval(x, y), f1x.eval(x, y), f1y.eval(x, y)}; }
};

cx unit(int m) { return std::polar(1.0, 2 * pi * m / cone_directions); }

}  // namespace

ConeReport local_cone_check(const HenonParams& H, const NormalForm2D& nf, const std::vector<Pt>& samples,
                            double rho) {
  int q = H.pq.q;
  double Rt = H.t < 0 ? repel_radius(q, H.t) : 0;
  double lam = std::abs(H.lambda);
  Jet J(nf.normal);
  ConeReport rep;
  rep.region = H.t < 0 ? "repelling annulus" : "repelling sector";
  rep.metric = "euclidean-normalized";
  rep.samples = int(samples.size());
  rep.worst_h_expansion = 1e300;
  rep.worst_v_expansion = 1e300;
  rep.min_abs_xq = 1e300;
  rep.h_bound_margin = 1e300;

  for (auto& s : samples) {
    cx x = s[0], y = s[1];
    cx xq = std::pow(x, q);
    if (std::abs(x) > rho * (1 + 1e-12) || !in_repelling_sector(xq) || (H.t < 0 && std::abs(xq) <= Rt))
      throw precondition_error("local_cone_check: sample outside the sector");
    rep.min_abs_xq = std::min(rep.min_abs_xq, std::abs(xq));
    auto d = J.at(x, y);  // [A B; C D]
    rep.n_at = std::max({rep.n_at, std::abs(d[2]), std::abs(d[3] - H.nu)});

    // horizontal cone |xi| >= |eta|: boundary directions eta = e^{i th} xi
    bool ok = std::abs(d[1]) < std::abs(d[0]);
    double eh = std::max(std::abs(d[0]), std::abs(d[2]));
    for (int m = 0; m < cone_directions; ++m) {
      cx e = unit(m);
      cx xi1 = d[0] + d[1] * e, eta1 = d[2] + d[3] * e;
      if (!(std::abs(eta1) < std::abs(xi1))) ok = false;
      eh = std::min(eh, std::max(std::abs(xi1), std::abs(eta1)));
    }
    double bound = lam * (1 + (q + 0.5) * eps1 * std::abs(xq));
    rep.h_bound_margin = std::min(rep.h_bound_margin, eh - bound);
    rep.worst_h_expansion = std::min(rep.worst_h_expansion, eh);

    // vertical cone at the image |xi| <= |x1|^{2q} |eta|, pulled back by DH^{-1}
    auto img = eval(nf.normal, x, y);
    double k1 = std::pow(std::abs(img[0]), 2 * q), k0 = std::pow(std::abs(x), 2 * q);
    cx det = d[0] * d[3] - d[1] * d[2];
    double ev = vertical_cap;
    if (std::abs(det) > 1e-300) {
      for (int m = 0; m < cone_directions; ++m) {
        cx xi = k1 * unit(m), eta = 1.0;
        cx xi0 = (d[3] * xi - d[1] * eta) / det, eta0 = (d[0] * eta - d[2] * xi) / det;
        if (!(std::abs(xi0) < k0 * std::abs(eta0))) ok = false;
        ev = std::min(ev, std::max(std::abs(xi0), std::abs(eta0)) / std::max(std::abs(xi), std::abs(eta)));
      }
      ev = std::min(ev, vertical_cap);
    }
    rep.worst_v_expansion = std::min(rep.worst_v_expansion, ev);
    if (!ok) rep.invariance_failures.push_back(s);
  }
  bool pass = rep.invariance_failures.empty() && rep.worst_h_expansion > 1 &&
              rep.worst_v_expansion > 1;
  rep.verdict = pass ? Verdict::PASS : Verdict::FAIL;
  return rep;
}

void validate(const HenonParams& H, const VSpec& v) {
  require(v.rho_Bpp > 0 && v.rho_Bpp < v.rho_B, "VSpec: need 0 < rho'' < rho'");
  require(v.tau > 0 && v.tau < 1, "VSpec: need 0 < tau < 1");
  // B' is the other preimage of B, around -alpha with radius about rho'/|lambda|
  double ra = std::abs(H.x_fixed);
  if (2 * ra <= v.rho_B * (1 + 1 / std::abs(H.lambda))) throw precondition_error("VSpec: B' overlaps B");
}

ConeReport global_cone_check(const HenonParams& H, const VSpec& v, int sample_count) {
  require(H.a != 0.0, "global_cone_check: needs a != 0");
  require(sample_count >= 1, "global_cone_check: needs samples");
  validate(H, v);
  SolidTorus T = torus_fixed_point(H, v.iters, v.angles, v.degree);
  PointCloud J = julia_from_sigma(H, T, v.depth, 1);
  std::vector<Pt> pts;
  for (auto& p : J.points)
    if (std::abs(p[0] - H.x_fixed) >= v.rho_Bpp) pts.push_back(p);
  std::vector<Pt> chosen;
  size_t n = std::min(pts.size(), size_t(sample_count));
  for (size_t i = 0; i < n; ++i) chosen.push_back(pts[i * pts.size() / n]);
  return global_cone_check(H, v, chosen);
}

ConeReport global_cone_check(const HenonParams& H, const VSpec& v, const std::vector<Pt>& points) {
  require(H.a != 0.0, "global_cone_check: needs a != 0");
  validate(H, v);
  double aa = std::abs(H.a), tau = v.tau;
  ConeReport rep;
  rep.region = "V - B''";
  rep.samples = int(points.size());

  // Constant density m stands in for the Poincare density; pick it inside the window where
  // both cone conditions can hold given r1 = min |p'| over the samples and their preimages.
  double r1 = 1e300;
  for (auto& p : points) r1 = std::min({r1, 2 * std::abs(p[0]), 2 * std::abs(p[1] / H.a)});
  auto roots = [](double b) {  // u^2 - b u + 1 = 0
    double disc = std::sqrt(std::max(0.0, b * b - 4));
    return std::array<double, 2>{(b - disc) / 2, (b + disc) / 2};
  };
  auto hr = roots(r1 / aa), vr = roots(r1 / aa);
  double lo = std::max(hr[0], tau * vr[0]), hi = std::min(hr[1], tau * vr[1]);
  double m = lo < hi ? std::sqrt(lo * hi) : aa / std::max(r1, 1e-300);
  rep.metric = "euclidean-scaled m=" + num(m);

  rep.worst_h_expansion = 1e300;
  rep.worst_v_expansion = 1e300;
  for (auto& p : points) {
    bool ok = true;
    cx x = p[0];
    // horizontal: |eta| <= m |xi|, norm m|xi|
    double eh = 1e300;
    for (int k = 0; k < cone_directions; ++k) {
      cx xi = 1.0, eta = m * unit(k);
      cx xi1 = 2.0 * x * xi + H.a * eta, eta1 = H.a * xi;
      if (!(std::abs(eta1) < m * std::abs(xi1))) ok = false;
      eh = std::min(eh, std::max(m * std::abs(xi1), std::abs(eta1)) / std::max(m * std::abs(xi), std::abs(eta)));
    }
    // vertical at p: m|xi| <= tau |eta|; DH^{-1} at p with preimage first coordinate y/a
    cx xp = p[1] / H.a;
    double ev = 1e300;
    for (int k = 0; k < cone_directions; ++k) {
      cx eta = 1.0, xi = (tau / m) * unit(k);
      cx xi0 = eta / H.a, eta0 = (xi - 2.0 * xp * eta / H.a) / H.a;
      if (!(m * std::abs(xi0) < tau * std::abs(eta0))) ok = false;
      ev = std::min(ev, std::max(m * std::abs(xi0), std::abs(eta0)) / std::max(m * std::abs(xi), std::abs(eta)));
    }
    rep.worst_h_expansion = std::min(rep.worst_h_expansion, eh);
    rep.worst_v_expansion = std::min(rep.worst_v_expansion, ev);
    if (!ok) rep.invariance_failures.push_back(p);
  }
  if (points.empty()) rep.worst_h_expansion = rep.worst_v_expansion = 0;
  bool pass = !points.empty() && rep.invariance_failures.empty() && rep.worst_h_expansion > 1 &&
              rep.worst_v_expansion > 1;
  rep.verdict = pass ? Verdict::PASS : Verdict::FAIL;
  return rep;
}

NestingResult cone_nesting_at_B(const HenonParams& H, const NormalForm2D& nf, double tau, double rho, int samples) {
  int q = H.pq.q;
  Jet J(nf.change);
  NestingResult res;
  for (int i = 0; i < samples; ++i) {
    cx xn = std::polar(rho, 2 * pi * (i + 0.5) / samples);
    Pt n{xn, 0.0};
    auto c = eval(nf.change_inv, n[0], n[1]);  // centered original coordinates
    auto d = J.at(c[0], c[1]);
    double worst = 0;
    for (int k = 0; k < cone_directions; ++k) {
      cx xi = tau * unit(k), eta = 1.0;
      cx xin = d[0] * xi + d[1] * eta, etan = d[2] * xi + d[3] * eta;
      worst = std::max(worst, std::abs(xin) / std::abs(etan) / std::pow(rho, 2 * q));
    }
    res.worst_ratio = std::max(res.worst_ratio, worst);
    res.failures += worst > 1;
    ++res.samples;
  }
  return res;
}

std::vector<ScanCell> hyperbolicity_scan(Rational pq, std::array<double, 2> t_range, std::array<double, 2> a_range,
                                         std::array<int, 2> resolution, const ScanOptions& opt) {
  int nt = resolution[0], na = resolution[1];
  require(nt >= 1 && na >= 1, "hyperbolicity_scan: resolution must be positive");
  std::vector<ScanCell> cells(size_t(nt) * na);
  auto coord = [](std::array<double, 2> r, int i, int n) { return n == 1 ? r[0] : r[0] + (r[1] - r[0]) * i / (n - 1); };
  std::vector<size_t> idx(cells.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::for_each(std::execution::par, idx.begin(), idx.end(), [&](size_t id) {
    ScanCell& cell = cells[id];
    cell.t = coord(t_range, int(id / na), nt);
    cell.a = coord(a_range, int(id % na), na);
    if (std::abs(cell.a) < 1e-14) {
      cell.verdict = Verdict::EXCLUDED;
      cell.metric = "degenerate a=0";
      return;
    }
    try {
      HenonParams H = make_params(pq, cell.t, cell.a);
      NormalForm2D nf = reduce(H, default_order(pq.q));
      ConeReport loc = local_cone_check(H, nf, sector_samples(H, opt.local_samples));
      ConeReport glo = global_cone_check(H, opt.v, opt.global_samples);
      cell.local_margin = loc.worst_h_expansion - 1;
      cell.global_h = glo.worst_h_expansion;
      cell.global_v = glo.worst_v_expansion;
      cell.metric = glo.metric;
      bool inv_ok = loc.invariance_failures.empty() && glo.invariance_failures.empty();
      if (!inv_ok || glo.verdict == Verdict::FAIL || cell.local_margin <= 0)
        cell.verdict = Verdict::FAIL;
      else if (cell.local_margin < opt.margin_tol)
        cell.verdict = Verdict::MARGINAL;
      else
        cell.verdict = Verdict::PASS;
    } catch (const std::exception& e) {
      cell.verdict = Verdict::FAIL;
      cell.metric = std::string("error: ") + e.what();
    }
  });
  return cells;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanCell>& cells) {
  csv_header(os, "hyp-scan", {"t", "a", "verdict", "local_margin", "global_h", "global_v", "metric"});
  for (auto& c : cells)
    os << num(c.t) << ',' << num(c.a) << ',' << to_string(c.verdict) << ',' << num(c.local_margin) << ','
       << num(c.global_h) << ',' << num(c.global_v) << ",\"" << c.metric << "\"\n";
}

}  // namespace hlab
