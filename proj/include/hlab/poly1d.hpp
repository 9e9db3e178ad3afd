#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hlab/common.hpp"
#include "hlab/series.hpp"

namespace hlab {

struct Rational {
  int p = 1, q = 1;
  static Rational parse(const std::string& s);  // "p/q" in lowest terms, 0 <= p <= q
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

// Sector constants.
inline const double eps0 = std::tan(2 * pi / 9);
inline const double eps1 = eps0 / std::sqrt(1 + eps0 * eps0);
inline double eps2(int q) { return 1.0 / (16.0 * (q + 1)); }
// Inner radius (in |x^q|) of the repelling annulus for t < 0.
inline double repel_radius(int q, double t) { return std::abs(t) / ((q + 1.0 / 3.0) * eps1); }

constexpr double default_rho = 0.15;  // normalized-coordinate radius
constexpr double escape_radius = 10.0;
constexpr double base_level_R = 4.0;  // base equipotential {G = log R}

// p(z) = z^2 + c with a fixed point of multiplier lambda at alpha = lambda/2.
struct PolyParams {
  Rational pq;
  double t = 0;
  cx lambda, c, alpha;

  static PolyParams on_family(Rational pq, double t);
  static PolyParams from_multiplier(cx lambda);

  cx operator()(cx z) const { return z * z + c; }
};

// Closed curve sampled at s = k/N.
struct LoopSample {
  std::vector<cx> values;
  double level = 0;
  std::vector<double> gaps;  // Cauchy gaps sup_k |gamma_n - gamma_{n-1}|, when produced by iteration
  size_t size() const { return values.size(); }
};

double green(const PolyParams& P, cx z, int iters);

// Equipotential {G = log sqrt(R)} parametrized by external angle.
LoopSample base_equipotential(const PolyParams& P, int N);
LoopSample pullback_loop(const PolyParams& P, const LoopSample& loop);
LoopSample caratheodory(const PolyParams& P, int N, int n_iters);

// sup_k |p(gamma(k/N)) - gamma(2k/N)|
double doubling_defect(const PolyParams& P, const LoopSample& loop);

struct NormalForm1D {
  TruncSeries1 change;  // x -> X, centered at alpha
  TruncSeries1 normal;  // lambda (X + X^{q+1} + C X^{2q+1} + ...)
  cx C = 0;
  cx rescale = 1;       // A in X = A x after the x^{q+1} step
};

// p(x + alpha) - alpha as a series.
TruncSeries1 centered_poly(const PolyParams& P, int D);
NormalForm1D normal_form_1d(const PolyParams& P, int D);

enum class Sector { attracting, repelling, outside };
const char* to_string(Sector s);

Sector sector_1d(const PolyParams& P, cx x, double rho = default_rho);
bool in_repelling_sector(cx xq);  // Re(x^q) > eps0 |Im(x^q)|, argument is x^q

// Petal Delta_R = {(Re w + 1/2R)^2 + (|Im w| - 1/2R)^2 < 1/(2R^2)}, w = x^q.
bool in_petal(int q, double R, cx x);
// Component index in 0..q-1 of a point of the petal (by argument).
int petal_component(int q, cx x);

void write_loop_csv(std::ostream& os, const LoopSample& loop);

}  // namespace hlab
