#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hlab/common.hpp"
#include "hlab/poly1d.hpp"

namespace hlab {

using Pt = std::array<cx, 2>;

constexpr double filtration_radius = 3.5;

// H(x,y) = (x^2 + c + a y, a x) on the curve where one fixed-point multiplier is lambda_t.
struct HenonParams {
  Rational pq;
  double t = 0;
  cx a;
  cx lambda, c, w, nu;
  cx x_fixed;   // first coordinate of the distinguished fixed point
  Pt q_fixed;
  PolyParams poly;  // the a = 0 member p_t

  cx c_from_curve() const;  // recomputes c from (lambda, a)
};

HenonParams make_params(Rational pq, double t, cx a);

Pt henon(const HenonParams& H, Pt p);
Pt henon_inv(const HenonParams& H, Pt p);
// DH rows (dx1/dx, dx1/dy, dy1/dx, dy1/dy)
std::array<cx, 4> henon_jacobian(const HenonParams& H, Pt p);
// The two eigenvalues of DH at q_fixed from the characteristic polynomial.
std::array<cx, 2> fixed_point_eigenvalues(const HenonParams& H);

bool in_filtration_plus(Pt p, double r = filtration_radius);  // |x| >= max(|y|, r)

struct Escape {
  bool escaped = false;
  int n = 0;  // first iterate inside the escaping filtration piece
};
Escape classify_forward(const HenonParams& H, Pt p, int max_iter, double r = filtration_radius);

struct PointCloud {
  std::vector<Pt> points;
  std::string meta;
};
// Snap to a grid of spacing h and drop duplicates; order of first appearance is kept.
void dedup(PointCloud& cloud, double h);
void write_cloud_csv(std::ostream& os, const PointCloud& cloud);

struct Window {
  cx center = 0;
  double half_width = 2;
  cx y = 0;  // the slice {y = const}
};

struct EscapeGrid {
  int res = 0;
  Window window;
  std::vector<int> times;  // -1 for bounded, row-major, row 0 at the top
  PointCloud boundary;
  cx cell_center(int i, int j) const;
  double spacing() const { return 2 * window.half_width / res; }
  double escaped_fraction() const;
  std::vector<std::uint8_t> pixels() const;
};

EscapeGrid jplus_slice(const HenonParams& H, const Window& win, int res, int max_iter);

// Newton on H^q - id started at seed; returns the q points of the cycle.
std::vector<Pt> attracting_cycle(const HenonParams& H, Pt seed, int q);

}  // namespace hlab
