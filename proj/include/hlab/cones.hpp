#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hlab/henon.hpp"
#include "hlab/normalform2d.hpp"

namespace hlab {

constexpr int cone_directions = 16;
constexpr double vertical_cap = 1e12;  // reported when DH is singular (a = 0)
constexpr double default_tau = 0.01;

enum class Verdict { PASS, FAIL, MARGINAL, EXCLUDED };
const char* to_string(Verdict v);

struct ConeReport {
  std::string region;
  std::string metric;  // which metric produced the verdict
  int samples = 0;
  double worst_h_expansion = 0;
  double worst_v_expansion = 0;
  double min_abs_xq = 0;       // min |x|^q over samples (local check)
  double n_at = 0;             // max |d(x h)| over samples (local check)
  double h_bound_margin = 0;   // min over samples of measured h-expansion minus the sector bound
  std::vector<Pt> invariance_failures;
  Verdict verdict = Verdict::FAIL;
};

// Samples (normalized coordinates) in the repelling sector of radius rho, |y| <= r_loc;
// for t < 0 the annulus |x^q| > R_t. Radial density concentrates near 0 so margins show up.
std::vector<Pt> sector_samples(const HenonParams& H, int count, double rho = default_rho, double r_loc = 0.1,
                               unsigned long long seed = 7);

ConeReport local_cone_check(const HenonParams& H, const NormalForm2D& nf, const std::vector<Pt>& samples,
                            double rho = default_rho);

struct VSpec {
  double rho_B = 0.2;     // B = D(alpha, rho_B) x D_r, handled by normalized coordinates
  double rho_Bpp = 0.1;   // B'' excluded from the global check
  double r = filtration_radius;
  double tau = default_tau;
  // sample source: J via the graph transform at this resolution
  int angles = 512, iters = 24, degree = 8, depth = 3;
};
void validate(const HenonParams& H, const VSpec& v);  // throws on B' overlapping B

ConeReport global_cone_check(const HenonParams& H, const VSpec& v, int sample_count);
// Same check on caller-supplied points of J.
ConeReport global_cone_check(const HenonParams& H, const VSpec& v, const std::vector<Pt>& points);

// Normalized vertical cones pulled back by the coordinate change contain the global ones near dB.
struct NestingResult {
  int samples = 0;
  int failures = 0;
  double worst_ratio = 0;  // max over samples of (pulled-back slope) / |x|^{2q}
};
NestingResult cone_nesting_at_B(const HenonParams& H, const NormalForm2D& nf, double tau, double rho = default_rho,
                                int samples = 256);

struct ScanCell {
  double t = 0, a = 0;
  Verdict verdict = Verdict::EXCLUDED;
  double local_margin = 0, global_h = 0, global_v = 0;
  std::string metric;
};
struct ScanOptions {
  int local_samples = 400;
  int global_samples = 200;
  double margin_tol = 1e-3;  // local margin below this is MARGINAL
  VSpec v;
};
std::vector<ScanCell> hyperbolicity_scan(Rational pq, std::array<double, 2> t_range, std::array<double, 2> a_range,
                                         std::array<int, 2> resolution, const ScanOptions& opt = {});
void write_scan_csv(std::ostream& os, const std::vector<ScanCell>& cells);

}  // namespace hlab
