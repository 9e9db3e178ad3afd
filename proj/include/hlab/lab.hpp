#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hlab/henon.hpp"
#include "hlab/poly1d.hpp"

namespace hlab {

// Hausdorff distance in C^2 = R^4 using an rtree for nearest-neighbour queries.
double hausdorff(const PointCloud& A, const PointCloud& B);
double directed_hausdorff(const PointCloud& from, const PointCloud& to);

struct HausdorffResult {
  std::vector<double> t_values;
  std::vector<double> distances;  // to the t = 0 reference
  std::string resolution;
};
bool strictly_decreasing(const std::vector<double>& v);
void write_hausdorff_csv(std::ostream& os, const std::string& kind, const HausdorffResult& r);

struct ContinuityOptions {
  int angles = 1024;
  int degree = 8;
  int iters = 240;      // graph-transform steps for every t, including the parabolic reference
  int depth = 1;        // sigma depth for J
  int seeds = 4;        // z-seeds per angle for J
  int slice_res = 1024;  // J+ slice grid
  int max_iter = 1000;  // escape iterations for the slice
  Window window{0.0, 1.25, 0.0};
};
struct ContinuityResult {
  HausdorffResult julia;
  HausdorffResult slice;
};
PointCloud julia_cloud(const HenonParams& H, const ContinuityOptions& opt);
PointCloud slice_cloud(const HenonParams& H, const ContinuityOptions& opt);
ContinuityResult continuity_experiment(Rational pq, cx a, const std::vector<double>& t_list,
                                       const ContinuityOptions& opt = {});

// d_H between Caratheodory loops at t and at 0, as clouds in C x {0}.
HausdorffResult radial_demo(Rational pq, const std::vector<double>& t_list, int N, int n_iters = 240);
PointCloud loop_cloud(const LoopSample& loop);

enum class Connectivity { CONNECTED_BY_CONSTRUCTION, UNKNOWN };
const char* to_string(Connectivity c);

struct ConnectivityCell {
  cx a;
  Connectivity verdict = Connectivity::UNKNOWN;
  double final_gap = 0, contraction = 0, separation = 0;
  std::string note;
};
struct ConnectivityOptions {
  int angles = 256;
  int degree = 8;
  int iters = 40;
  double gap_tol = 1e-2;  // last Cauchy gap must be below this
};
struct ConnectivityScan {
  int res = 0;
  double half_width = 0;
  std::vector<ConnectivityCell> cells;  // row-major over (Im a descending, Re a ascending)
  std::vector<std::uint8_t> pixels() const;
};
// Square window of complex a of the given half width centered at 0.
ConnectivityScan connectivity_scan(Rational pq, double t, double half_width, int res,
                                   const ConnectivityOptions& opt = {});
void write_connectivity_csv(std::ostream& os, const ConnectivityScan& s);

// Flat key=value configuration mirroring the command-line flags.
struct RunConfig {
  std::string subcommand;
  std::string pq = "1/1";
  double t = 0.1;
  double a = 0.05;
  double a_im = 0;
  int angles = 1024;
  int degree = 8;
  int iters = 40;
  int res = 256;
  int samples = 1000;
  int steps = 500;
  double tol = 1e-6;
  unsigned long long seed = 1;
  std::vector<double> t_list{0.2, 0.1, 0.05, 0.025};
  double t_min = -0.02, t_max = 0.05;
  double a_min = -0.1, a_max = 0.1;
  std::string out = "out";

  std::string serialize() const;
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
  bool operator==(const RunConfig&) const = default;
};

// Runs one subcommand, writes its CSV (and image) under cfg.out, prints a summary to log.
// Returns the paths written.
std::vector<std::string> run(const RunConfig& cfg, std::ostream& log);

}  // namespace hlab
