#pragma once

#include <iosfwd>
#include <vector>

#include "hlab/henon.hpp"
#include "hlab/poly1d.hpp"

namespace hlab {

// s = k/n_angles -> disk phi_s(z) = sum_m coeff(k,m) z^m on D_r. Disks are graphs x = phi_s(y).
struct SolidTorus {
  int n_angles = 0;
  int degree = 8;
  double r = filtration_radius;
  double node_radius = 0.9 * filtration_radius;
  int level = 0;
  std::vector<cx> coeffs;  // n_angles * (degree+1)
  LoopSample centers;      // the 1-D pullback loop run in lockstep; seeds the Newton solves
  std::vector<double> gaps;

  cx coeff(int k, int m) const { return coeffs[size_t(k) * (degree + 1) + m]; }
  cx eval(int k, cx z) const;
  cx deriv(int k, cx z) const;
  cx node(int j) const;  // collocation node j of 2*degree on |z| = node_radius
  int nodes() const { return 2 * degree; }
  int index_of(double s) const;  // grid index for an angle, throws if s is off the grid
};

SolidTorus torus_seed(const HenonParams& H, const LoopSample& loop0, int n_angles, int degree = 8);
SolidTorus graph_transform(const HenonParams& H, const SolidTorus& T);
SolidTorus torus_fixed_point(const HenonParams& H, int n_iters, int n_angles, int degree = 8);

// sup over angles and nodes of |T1 - T0|
double torus_distance(const SolidTorus& a, const SolidTorus& b);
// min over s of sup_z |phi_s - phi_{s+1/2}| on the nodes
double separation(const SolidTorus& T);
// sup over s and |z| = radius of |phi_s(z) - gamma(s) + a z / (2 gamma(s))|, gamma the lockstep loop;
// radius < 0 means the collocation circle
double first_order_residual(const HenonParams& H, const SolidTorus& T, double radius = -1);
// max over angles of |phi_s'(z)| on |z| = node_radius
double max_slope(const SolidTorus& T);

struct SigmaPoint {
  double s;
  cx z;
};
SigmaPoint sigma(const HenonParams& H, const SolidTorus& fstar, SigmaPoint p);
Pt fstar_point(const SolidTorus& fstar, SigmaPoint p);

// Forward sigma-orbits of a seed grid (every angle, seeds_per_angle z-values in D_node) of the given depth.
PointCloud julia_from_sigma(const HenonParams& H, const SolidTorus& fstar, int depth, int seeds_per_angle);

double semiconjugacy_residual(const HenonParams& H, const SolidTorus& fstar, int sample_count);

Pt model_psi(const PolyParams& P, double eps, Pt p);
// psi iterated on (loop samples) x (z seeds), then placed in C^2 by (zeta - eps z/(2 zeta), z).
PointCloud model_cloud(const PolyParams& P, double eps, const LoopSample& loop, int depth, int seeds_per_point,
                       double r = filtration_radius);

void write_torus_csv(std::ostream& os, const SolidTorus& T);

}  // namespace hlab
