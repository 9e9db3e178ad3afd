#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hlab/henon.hpp"
#include "hlab/series.hpp"

namespace hlab {

// All jets live in coordinates centered at q_fixed.
struct NormalForm2D {
  int D = 0;
  Map2 change;       // centered coordinates -> normalized coordinates
  Map2 change_inv;
  Map2 normal;       // (lambda(x + x^{q+1} + C x^{2q+1} + ...), nu y + x h(x,y)) with h(0,0) = 0
  Map2 horizontal;   // change before the final shear; its y-part is a function of y alone
  TruncSeries1 wss_jet;
  cx C_at = 0;
  cx rescale = 1;    // A with A^q = (x^{q+1} coefficient)/lambda
  cx shear = 0;      // y' = y + shear * x, removes h(0,0)
};

Map2 centered_henon(const HenonParams& H, int D);

// u = W(v) with W(0) = 0: graph of the local strong stable manifold in centered coordinates.
TruncSeries1 wss_graph(const HenonParams& H, int D);

NormalForm2D reduce(const HenonParams& H, int D);
inline int default_order(int q) { return 2 * q + 4; }

// max |change o F - normal o change| over total degree <= upto
double conjugacy_residual(const HenonParams& H, const NormalForm2D& nf, int upto);

// Point maps between original and normalized coordinates (jet evaluation).
Pt to_normal(const HenonParams& H, const NormalForm2D& nf, Pt p);
Pt from_normal(const HenonParams& H, const NormalForm2D& nf, Pt n);

struct PetalOptions {
  int samples = 1000;
  int steps = 500;
  double tol = 1e-6;
  double rho = default_rho;
  double r_loc = 0.1;
  unsigned long long seed = 1;
};

// Petal parameter R with max |x^q| = sqrt(2)/R tied to rho, shrunk when t > 0 so the
// one-step inclusion of the petals still holds.
double petal_R(int q, double t, double rho);

struct TrapSample {
  int component = 0;
  Pt start_normal{}, start{}, end{};
  double final_dist = 0;
  int steps = 0;
  bool rotation_ok = false;
  bool converged = false;
  bool pass = false;
};

struct TrappingReport {
  std::string target;  // "cycle", "origin" or "none"
  double R = 0, r_loc = 0;
  std::vector<Pt> cycle;
  std::vector<TrapSample> samples;
  int passed = 0;
  double certified_radius = 0;  // largest |x| such that every sample inside passed
  double fattening = 0;         // sup |y_1| / r_loc - 1 over one step, clamped at 0
  bool all_pass() const { return passed == int(samples.size()); }
  void write_csv(std::ostream& os) const;
};

TrappingReport petal_check(const HenonParams& H, const NormalForm2D& nf, const PetalOptions& opt = {});

}  // namespace hlab
