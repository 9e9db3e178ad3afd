#include "hlab/poly1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hlab/io.hpp"

namespace hlab {

Rational Rational::parse(const std::string& s) {
  Rational r;
  char slash = 0;
  std::istringstream in(s);
  if (!(in >> r.p >> slash >> r.q) || slash != '/' || !in.eof())
    throw precondition_error("rotation number must look like p/q, got '" + s + "'");
  require(r.q >= 1 && r.p >= 0 && r.p <= r.q, "rotation number p/q needs 0 <= p <= q, q >= 1");
  require(std::gcd(r.p, r.q) == 1, "rotation number must be in lowest terms");
  return r;
}

std::string Rational::str() const { return std::to_string(p) + "/" + std::to_string(q); }

// e^{2 pi i p/q}, exact on the axes
static cx root_of_unity(Rational r) {
  int p = r.p % r.q, q = r.q;
  if (p == 0) return 1.0;
  if (2 * p == q) return -1.0;
  if (4 * p == q) return cx(0, 1);
  if (4 * p == 3 * q) return cx(0, -1);
  return std::polar(1.0, 2 * pi * p / q);
}

PolyParams PolyParams::on_family(Rational pq, double t) {
  PolyParams P = from_multiplier((1 + t) * root_of_unity(pq));
  P.pq = pq;
  P.t = t;
  return P;
}

PolyParams PolyParams::from_multiplier(cx lambda) {
  PolyParams P;
  P.lambda = lambda;
  P.c = lambda / 2.0 - lambda * lambda / 4.0;
  P.alpha = lambda / 2.0;
  return P;
}

double green(const PolyParams& P, cx z, int iters) {
  require(iters >= 1, "green: iters must be >= 1");
  double scale = 1;
  for (int n = 0; n <= iters; ++n) {
    if (std::abs(z) > escape_radius) return scale * std::log(std::abs(z));
    if (n == iters) break;
    z = P(z);
    scale *= 0.5;
  }
  return 0;
}

static bool power_of_two(size_t n) { return n && !(n & (n - 1)); }

LoopSample base_equipotential(const PolyParams& P, int N) {
  require(N >= 2 && power_of_two(size_t(N)), "loop size must be a power of two");
  // Psi(W) ~ W - c/(2W) at |W| = 2^32, then five pullbacks bring the level to log 2
  const int m = 5;
  double radius = std::ldexp(1.0, 1 << m);
  LoopSample L;
  L.values.resize(N);
  for (int k = 0; k < N; ++k) {
    cx W = std::polar(radius, 2 * pi * k / N);
    L.values[k] = W - P.c / (2.0 * W);
  }
  L.level = std::log(radius);
  for (int i = 0; i < m; ++i) L = pullback_loop(P, L);
  return L;
}

LoopSample pullback_loop(const PolyParams& P, const LoopSample& in) {
  size_t N = in.size();
  require(power_of_two(N), "loop size must be a power of two");
  require(N >= size_t(2 * P.pq.q), "loop needs at least 2q samples");
  require(in.level > 0, "pullback needs a loop at positive level");

  std::vector<cx> root(N);
  for (size_t k = 0; k < N; ++k) {
    root[k] = std::sqrt(in.values[(2 * k) % N] - P.c);
    if (!std::isfinite(root[k].real()) || !std::isfinite(root[k].imag()))
      throw numerical_error("pullback: square root did not produce a finite value");
  }

  LoopSample out;
  out.level = in.level / 2;
  out.values.resize(N);
  cx r0 = root[0];
  out.values[0] = (r0.real() > -r0.real() || (r0.real() == 0 && r0.imag() >= 0)) ? r0 : -r0;
  auto stitch = [&](cx prev, cx r) {
    double d1 = std::abs(r - prev), d2 = std::abs(-r - prev);
    if (2 * std::abs(r) <= std::min(d1, d2)) throw numerical_error("resolution too coarse");
    return d1 <= d2 ? r : -r;
  };
  for (size_t k = 1; k < N; ++k) out.values[k] = stitch(out.values[k - 1], root[k]);
  // closing the loop must pick the seed branch again
  if (stitch(out.values[N - 1], root[0]) != out.values[0]) throw numerical_error("resolution too coarse");
  return out;
}

static double sup_dist(const std::vector<cx>& a, const std::vector<cx>& b) {
  double m = 0;
  for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

LoopSample caratheodory(const PolyParams& P, int N, int n_iters) {
  require(N >= 1024 && power_of_two(size_t(N)), "caratheodory: N must be a power of two >= 1024");
  require(n_iters >= 1, "caratheodory: n_iters must be >= 1");
  LoopSample L = base_equipotential(P, N);
  std::vector<double> gaps;
  for (int n = 0; n < n_iters; ++n) {
    LoopSample next = pullback_loop(P, L);
    gaps.push_back(sup_dist(next.values, L.values));
    L = std::move(next);
  }
  L.gaps = std::move(gaps);
  return L;
}

double doubling_defect(const PolyParams& P, const LoopSample& L) {
  size_t N = L.size();
  double m = 0;
  for (size_t k = 0; k < N; ++k) m = std::max(m, std::abs(P(L.values[k]) - L.values[(2 * k) % N]));
  return m;
}

TruncSeries1 centered_poly(const PolyParams& P, int D) {
  TruncSeries1 f(D);
  f[1] = 2.0 * P.alpha;
  if (D >= 2) f[2] = 1.0;
  return f;
}

static TruncSeries1 conjugate(const TruncSeries1& phi, const TruncSeries1& f) {
  return compose1(phi, compose1(f, invert1(phi)));
}

NormalForm1D normal_form_1d(const PolyParams& P, int D) {
  int q = P.pq.q;
  require(D >= 2 * q + 2, "normal_form_1d: need D >= 2q+2");
  cx lam = P.lambda;
  NormalForm1D nf{TruncSeries1::identity(D), centered_poly(P, D), 0.0, 1.0};
  for (int k = 2; k <= 2 * q + 1; ++k) {
    if ((k - 1) % q != 0) {
      cx div = lam - std::pow(lam, k);
      if (std::abs(div) < 1e-8) throw numerical_error("resonance too close");
      TruncSeries1 phi = TruncSeries1::identity(D);
      phi[k] = nf.normal[k] / div;
      nf.normal = conjugate(phi, nf.normal);
      nf.change = compose1(phi, nf.change);
    }
    if (k == q + 1) {
      cx A = std::pow(nf.normal[q + 1] / lam, 1.0 / q);
      TruncSeries1 phi(D);
      phi[1] = A;
      nf.normal = conjugate(phi, nf.normal);
      nf.change = A * nf.change;
      nf.rescale = A;
    }
  }
  nf.C = nf.normal[2 * q + 1] / lam;
  return nf;
}

const char* to_string(Sector s) {
  switch (s) {
    case Sector::attracting: return "attracting";
    case Sector::repelling: return "repelling";
    default: return "outside";
  }
}

bool in_repelling_sector(cx xq) { return xq.real() > eps0 * std::abs(xq.imag()); }

Sector sector_1d(const PolyParams& P, cx x, double rho) {
  if (std::abs(x) > rho) return Sector::outside;
  cx xq = std::pow(x, P.pq.q);
  bool rep = in_repelling_sector(xq);
  if (P.t < 0 && std::abs(xq) <= repel_radius(P.pq.q, P.t)) rep = false;
  return rep ? Sector::repelling : Sector::attracting;
}

bool in_petal(int q, double R, cx x) {
  cx w = std::pow(x, q);
  double u = w.real() + 1 / (2 * R), v = std::abs(w.imag()) - 1 / (2 * R);
  return u * u + v * v < 1 / (2 * R * R);
}

int petal_component(int q, cx x) {
  double a = std::arg(x);
  if (a < 0) a += 2 * pi;
  int j = int(std::floor(a * q / (2 * pi)));
  return std::clamp(j, 0, q - 1);
}

void write_loop_csv(std::ostream& os, const LoopSample& L) {
  csv_header(os, "loop", {"k", "s", "re", "im", "level"});
  size_t N = L.size();
  for (size_t k = 0; k < N; ++k)
    os << k << ',' << num(double(k) / double(N)) << ',' << num(L.values[k].real()) << ','
       << num(L.values[k].imag()) << ',' << num(L.level) << '\n';
}

}  // namespace hlab
