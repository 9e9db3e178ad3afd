#include <algorithm>
#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>
#include <execution>

#include "hlab/lab.hpp"

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace hlab {

namespace {

using P4 = bg::model::point<double, 4, bg::cs::cartesian>;

P4 to_p4(const Pt& p) {
  P4 q;
  bg::set<0>(q, p[0].real());
  bg::set<1>(q, p[0].imag());
  bg::set<2>(q, p[1].real());
  bg::set<3>(q, p[1].imag());
  return q;
}

}  // namespace

double directed_hausdorff(const PointCloud& from, const PointCloud& to) {
  require(!from.points.empty() && !to.points.empty(), "hausdorff: empty point cloud");
  std::vector<P4> pts;
  pts.reserve(to.points.size());
  for (auto& p : to.points) pts.push_back(to_p4(p));
  bgi::rtree<P4, bgi::rstar<16>> tree(pts.begin(), pts.end());
  std::vector<double> d(from.points.size());
  std::vector<size_t> idx(d.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::for_each(std::execution::par, idx.begin(), idx.end(), [&](size_t i) {
    P4 q = to_p4(from.points[i]);
    std::vector<P4> hit;
    tree.query(bgi::nearest(q, 1), std::back_inserter(hit));
    d[i] = bg::distance(q, hit.front());
  });
  return *std::max_element(d.begin(), d.end());
}

double hausdorff(const PointCloud& A, const PointCloud& B) {
  return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

}  // namespace hlab
