#include "hlab/normalform2d.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "hlab/io.hpp"

namespace hlab {

Map2 centered_henon(const HenonParams& H, int D) {
  require(D >= 2, "centered_henon: need D >= 2");
  Map2 F{TruncSeries2(D), TruncSeries2(D)};
  F[0].at(1, 0) = 2.0 * H.x_fixed;
  F[0].at(2, 0) = 1.0;
  F[0].at(0, 1) = H.a;
  F[1].at(1, 0) = H.a;
  return F;
}

TruncSeries1 wss_graph(const HenonParams& H, int D) {
  require(std::abs(H.nu) < 1, "wss_graph: need |nu| < 1");
  cx a = H.a, lam = H.lambda, nu = H.nu;
  TruncSeries1 W(D);
  if (D >= 1) W[1] = -a / lam;  // the nu-eigendirection
  // W(a W(v)) = W(v)^2 + 2 x_q W(v) + a v, solved degree by degree
  auto residual = [&](const TruncSeries1& w) {
    TruncSeries1 lhs = compose1(w, a * w);
    TruncSeries1 rhs = w * w + (2.0 * H.x_fixed) * w;
    if (D >= 1) rhs[1] += a;
    return lhs - rhs;
  };
  for (int n = 2; n <= D; ++n) {
    cx den = std::pow(nu, n) - lam;
    if (std::abs(den) < 1e-10) throw numerical_error("wss_graph: resonance in the recursion");
    W[n] = 0.0;
    W[n] = -residual(W)[n] / den;
  }
  return W;
}

namespace {

Map2 conj(const Map2& phi, const Map2& G) { return compose2(phi, compose2(G, invert2(phi))); }

struct Reducer {
  const HenonParams& H;
  int D;
  Map2 G, change;

  void apply(const Map2& phi) {
    G = conj(phi, G);
    change = compose2(phi, change);
  }
};

}  // namespace

NormalForm2D reduce(const HenonParams& H, int D) {
  int q = H.pq.q;
  cx lam = H.lambda, nu = H.nu;
  require(D >= 2 * q + 2, "reduce: need D >= 2q+2");
  if (!(std::abs(nu) * std::pow(std::abs(lam), 2 * q) < 1))
    throw precondition_error("reduce: eigenvalue condition |nu||lambda|^{2q} < 1 violated");

  NormalForm2D nf;
  nf.D = D;
  nf.wss_jet = wss_graph(H, D);
  Reducer r{H, D, centered_henon(H, D), identity2(D)};
  TruncSeries2 X = TruncSeries2::var_x(D), Y = TruncSeries2::var_y(D);

  // straighten the strong stable manifold to {x = 0}
  r.apply({X - compose(nf.wss_jet, Y), Y});

  // linearize the dynamics on {x = 0}: l(g(v)) = nu l(v)
  if (std::abs(nu) > 0) {
    TruncSeries1 g(D), l = TruncSeries1::identity(D);
    for (int j = 0; j <= D; ++j) g[j] = r.G[1].at(0, j);
    for (int n = 2; n <= D; ++n) {
      cx den = std::pow(nu, n) - nu;
      if (std::abs(den) < 1e-300) throw numerical_error("reduce: degenerate linearization");
      l[n] = 0.0;
      TruncSeries1 e = compose1(l, g) - nu * l;
      l[n] = -e[n] / den;
    }
    r.apply({X, compose(l, Y)});
  }

  // step 1: x -> u(y) x with u(y) = prod b1(nu^n y), b1 = a1/lambda
  {
    TruncSeries1 b1(D), u = TruncSeries1::constant(D, 1.0);
    for (int j = 0; j + 1 <= D; ++j) b1[j] = r.G[0].at(1, j) / lam;
    cx nun = 1;
    for (int n = 0; n < 500; ++n, nun *= nu) {
      TruncSeries1 f = b1.scaled_arg(nun);
      u = u * f;
      if ((f - TruncSeries1::constant(D, 1.0)).max_abs() < 1e-14) break;
    }
    r.apply({compose(u, Y) * X, Y});
  }

  // steps 2 and 3
  for (int k = 2; k <= 2 * q + 1; ++k) {
    cx lk = std::pow(lam, k);
    TruncSeries1 v(D);
    bool any = false;
    for (int j = 1; k + j <= D; ++j) {
      cx den = lam - lk * std::pow(nu, j);
      if (std::abs(den) < 1e-10) throw numerical_error("reduce: resonance in the y-dependent step");
      v[j] = r.G[0].at(k, j) / den;
      any = any || v[j] != 0.0;
    }
    if (any) {
      TruncSeries2 xk = TruncSeries2::constant(D, 1.0);
      for (int i = 0; i < k; ++i) xk = xk * X;
      r.apply({X + compose(v, Y) * xk, Y});
    }
    if ((k - 1) % q != 0) {
      cx den = lam - lk;
      if (std::abs(den) < 1e-8) throw numerical_error("resonance too close");
      TruncSeries2 xk = TruncSeries2::constant(D, 1.0);
      for (int i = 0; i < k; ++i) xk = xk * X;
      r.apply({X + (r.G[0].at(k, 0) / den) * xk, Y});
    }
    if (k == q + 1) {
      nf.rescale = std::pow(r.G[0].at(q + 1, 0) / lam, 1.0 / q);
      r.apply({nf.rescale * X, Y});
    }
  }
  nf.horizontal = r.change;

  // final shear kills the x-coefficient of the second component
  nf.shear = -r.G[1].at(1, 0) / (lam - nu);
  if (nf.shear != 0.0) r.apply({X, Y + nf.shear * X});

  nf.change = r.change;
  nf.change_inv = invert2(nf.change);
  nf.normal = r.G;
  nf.C_at = nf.normal[0].at(2 * q + 1, 0) / lam;
  return nf;
}

double conjugacy_residual(const HenonParams& H, const NormalForm2D& nf, int upto) {
  Map2 F = centered_henon(H, nf.D);
  return max_abs_diff(compose2(nf.change, F), compose2(nf.normal, nf.change), upto);
}

Pt to_normal(const HenonParams& H, const NormalForm2D& nf, Pt p) {
  return eval(nf.change, p[0] - H.q_fixed[0], p[1] - H.q_fixed[1]);
}

Pt from_normal(const HenonParams& H, const NormalForm2D& nf, Pt n) {
  auto c = eval(nf.change_inv, n[0], n[1]);
  return {c[0] + H.q_fixed[0], c[1] + H.q_fixed[1]};
}

double petal_R(int q, double t, double rho) {
  double R = std::sqrt(2.0) / std::pow(rho, q);
  if (t > 0) {
    // (R + q)/(R + q/2) > (1+t)^q
    double mu = std::pow(1 + t, q);
    if (mu >= 2) throw precondition_error("petal_R: t too large for forward-invariant petals");
    R = std::min(R, 0.95 * q * (1 - mu / 2) / (mu - 1));
  }
  return R;
}

static double dist2(Pt a, Pt b) { return std::hypot(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

TrappingReport petal_check(const HenonParams& H, const NormalForm2D& nf, const PetalOptions& opt) {
  int q = H.pq.q, p = H.pq.p % q;
  TrappingReport rep;
  rep.R = petal_R(q, H.t, opt.rho);
  rep.r_loc = opt.r_loc;
  double R = rep.R;

  if (H.t > 0) {
    rep.target = "cycle";
    double w = (std::pow(1 + H.t, -q) - 1) / q;
    cx x0 = std::polar(std::pow(-w, 1.0 / q), pi / q);
    rep.cycle = attracting_cycle(H, from_normal(H, nf, {x0, 0.0}), q);
  } else if (H.t < 0) {
    rep.target = "origin";
    rep.cycle = {H.q_fixed};
  } else {
    rep.target = "none";
  }

  // samples: w = x^q uniform in the petal (restricted to |w| <= R_t when t < 0), y in D_{r_loc}
  std::mt19937_64 rng(opt.seed);
  double cr = 1 / (2 * R), rad = 1 / (std::sqrt(2.0) * R);
  std::uniform_real_distribution<double> ur(-cr - rad, -cr + rad), ui(-(cr + rad), cr + rad), u01(0, 1);
  double wmax = H.t < 0 ? repel_radius(q, H.t) : 1e300;
  std::vector<Pt> starts;
  std::vector<int> comps;
  while (int(starts.size()) < opt.samples) {
    cx w(ur(rng), ui(rng));
    double yr = opt.r_loc * std::sqrt(u01(rng)), ya = 2 * pi * u01(rng);
    double u = w.real() + cr, v = std::abs(w.imag()) - cr;
    if (!(u * u + v * v < rad * rad) || std::abs(w) > wmax || std::abs(w) == 0) continue;
    int j = int(starts.size()) % q;
    double ang = std::arg(w);
    if (ang < 0) ang += 2 * pi;
    cx x = std::polar(std::pow(std::abs(w), 1.0 / q), (ang + 2 * pi * j) / q);
    starts.push_back({x, std::polar(yr, ya)});
    comps.push_back(j);
  }

  double ysup = 0;
  for (size_t i = 0; i < starts.size(); ++i) {
    TrapSample s;
    s.component = comps[i];
    s.start_normal = starts[i];
    s.start = from_normal(H, nf, starts[i]);

    Pt n1 = to_normal(H, nf, henon(H, s.start));
    ysup = std::max(ysup, std::abs(n1[1]));
    bool to_zero = std::abs(n1[0]) < 1e-12;
    s.rotation_ok = to_zero || (in_petal(q, R, n1[0]) && petal_component(q, n1[0]) == (s.component + p) % q &&
                                std::abs(n1[1]) < opt.r_loc);

    Pt z = s.start;
    if (rep.target == "none") {
      s.converged = true;
      s.end = z;
    } else {
      s.converged = false;
      for (int n = 0; n <= opt.steps; ++n) {
        double d = 1e300;
        for (auto& c : rep.cycle) d = std::min(d, dist2(z, c));
        s.final_dist = d;
        s.steps = n;
        if (d < opt.tol) {
          s.converged = true;
          break;
        }
        if (n == opt.steps || in_filtration_plus(z)) break;
        z = henon(H, z);
      }
      s.end = z;
    }
    s.pass = s.rotation_ok && s.converged;
    rep.passed += s.pass;
    rep.samples.push_back(s);
  }
  rep.fattening = std::max(0.0, ysup / opt.r_loc - 1);

  std::vector<size_t> order(rep.samples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::abs(rep.samples[a].start_normal[0]) < std::abs(rep.samples[b].start_normal[0]);
  });
  rep.certified_radius = 0;
  for (size_t i : order) {
    if (!rep.samples[i].pass) break;
    rep.certified_radius = std::abs(rep.samples[i].start_normal[0]);
  }
  return rep;
}

void TrappingReport::write_csv(std::ostream& os) const {
  csv_header(os, "trapping target=" + target,
             {"i", "component", "x_re", "x_im", "y_re", "y_im", "end_x_re", "end_x_im", "end_y_re", "end_y_im",
              "final_dist", "steps", "rotation_ok", "converged", "verdict"});
  for (size_t i = 0; i < samples.size(); ++i) {
    auto& s = samples[i];
    os << i << ',' << s.component << ',' << num(s.start[0].real()) << ',' << num(s.start[0].imag()) << ','
       << num(s.start[1].real()) << ',' << num(s.start[1].imag()) << ',' << num(s.end[0].real()) << ','
       << num(s.end[0].imag()) << ',' << num(s.end[1].real()) << ',' << num(s.end[1].imag()) << ','
       << num(s.final_dist) << ',' << s.steps << ',' << s.rotation_ok << ',' << s.converged << ','
       << (s.pass ? "PASS" : "FAIL") << '\n';
  }
}

}  // namespace hlab
