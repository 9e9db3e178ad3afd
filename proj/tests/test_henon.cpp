#include <doctest.h>

#include <random>
#include <sstream>

#include "hlab/henon.hpp"
#include "hlab/normalform2d.hpp"

using namespace hlab;

static double dist(Pt a, Pt b) { return std::hypot(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

TEST_CASE("parameters on the curve") {
  HenonParams H = make_params({1, 1}, 0, 0.0);
  CHECK(std::abs(H.c - 0.25) < 1e-15);
  CHECK(dist(H.q_fixed, {0.5, 0.0}) < 1e-15);
  CHECK(H.nu == cx(0));

  HenonParams M = make_params({1, 2}, 0, 0.0);
  CHECK(std::abs(M.c + 0.75) < 1e-15);
  CHECK(M.lambda == cx(-1));
  CHECK(std::abs(M.poly.alpha + 0.5) < 1e-15);

  auto ev = fixed_point_eigenvalues(make_params({1, 1}, 0, 0.1));
  CHECK(std::abs(ev[0] - 1.0) < 1e-10);
  CHECK(std::abs(ev[1] + 0.01) < 1e-10);

  CHECK_THROWS_AS(make_params({1, 2}, 0.3, 0.1), precondition_error);
  CHECK_THROWS_AS(make_params({1, 1}, 0, 0.6), precondition_error);
}

TEST_CASE("curve identities on random parameters") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  const Rational rots[] = {{1, 1}, {1, 2}, {1, 3}, {2, 5}, {3, 7}};
  for (int i = 0; i < 100; ++i) {
    Rational pq = rots[i % 5];
    double t = 0.99 * u(rng) / (2 * pq.q);
    cx a = 0.49 * std::polar(std::abs(u(rng)), pi * u(rng));
    HenonParams H = make_params(pq, t, a);
    CHECK(std::abs(H.c - H.poly.c - a * a * H.w) < 1e-12);
    CHECK(std::abs(H.c - H.c_from_curve()) < 1e-12);
    CHECK(dist(henon(H, H.q_fixed), H.q_fixed) < 1e-12);
    auto ev = fixed_point_eigenvalues(H);
    CHECK(std::abs(ev[0] - H.lambda) < 1e-10);
    CHECK(std::abs(ev[1] - H.nu) < 1e-10);
    CHECK(std::abs(ev[0] * ev[1] + a * a) < 1e-12);
    CHECK(std::abs(std::abs(H.lambda) * std::abs(H.nu) - std::norm(a)) < 1e-12);
    Pt p{cx(u(rng), u(rng)), cx(u(rng), u(rng))};
    auto J = henon_jacobian(H, p);
    CHECK(std::abs(J[0] * J[3] - J[1] * J[2] + a * a) < 1e-12);
  }
}

TEST_CASE("map and inverse") {
  HenonParams H = make_params({1, 1}, 0, 0.1);
  CHECK(dist(henon(H, H.q_fixed), H.q_fixed) < 1e-15);
  Pt p{0.3, -0.2};
  CHECK(dist(henon_inv(H, henon(H, p)), p) < 1e-13);
  CHECK_THROWS_AS(henon_inv(make_params({1, 1}, 0, 0.0), p), precondition_error);

  HenonParams Z = make_params({1, 2}, 0.05, 0.0);
  Pt img = henon(Z, {cx(0.3, 0.1), 0.7});
  CHECK(std::abs(img[0] - Z.poly(cx(0.3, 0.1))) < 1e-15);
  CHECK(img[1] == cx(0));
}

TEST_CASE("forward escape") {
  HenonParams H = make_params({1, 1}, 0.05, 0.05);
  Escape e = classify_forward(H, {10.0, 0.0}, 100);
  CHECK(e.escaped);
  CHECK(e.n == 0);
  CHECK_FALSE(classify_forward(H, H.q_fixed, 1000).escaped);

  // a point of the attracting petal stays bounded
  NormalForm2D nf = reduce(H, default_order(1));
  Pt petal = from_normal(H, nf, {-0.3, 0.01});
  CHECK_FALSE(classify_forward(H, petal, 1000).escaped);
}

TEST_CASE("J+ slices") {
  HenonParams Z = make_params({1, 2}, 0.05, 0.0);
  EscapeGrid g = jplus_slice(Z, {0.0, 1.6, 0.0}, 128, 200);
  int agree = 0;
  for (int i = 0; i < 128; ++i)
    for (int j = 0; j < 128; ++j) {
      bool esc = g.times[size_t(i) * 128 + j] >= 0;
      agree += esc == (green(Z.poly, g.cell_center(i, j), 200) > 0);
    }
  CHECK(agree >= 0.99 * 128 * 128);

  HenonParams H = make_params({1, 1}, 0, 0.05);
  EscapeGrid around = jplus_slice(H, {H.q_fixed[0], 0.1, H.q_fixed[1]}, 64, 300);
  CHECK_FALSE(around.boundary.points.empty());

  double prev = 0;
  for (int m : {5, 20, 80, 320}) {
    double f = jplus_slice(H, {0.0, 1.5, 0.0}, 64, m).escaped_fraction();
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("attracting cycle by Newton") {
  HenonParams H = make_params({1, 2}, 0.05, 0.05);
  NormalForm2D nf = reduce(H, default_order(2));
  double w = (std::pow(1.05, -2) - 1) / 2;
  auto cyc = attracting_cycle(H, from_normal(H, nf, {std::polar(std::sqrt(-w), pi / 2), 0.0}), 2);
  REQUIRE(cyc.size() == 2);
  CHECK(dist(henon(H, cyc[0]), cyc[1]) < 1e-10);
  CHECK(dist(henon(H, cyc[1]), cyc[0]) < 1e-10);
  CHECK(dist(cyc[0], cyc[1]) > 1e-3);
}

TEST_CASE("point cloud dedup and csv") {
  PointCloud c;
  c.points = {{0.0, 0.0}, {1e-9, 0.0}, {1.0, 0.0}};
  dedup(c, 1e-6);
  CHECK(c.points.size() == 2);
  std::ostringstream os;
  write_cloud_csv(os, c);
  CHECK(os.str().rfind("# hlab-csv v1", 0) == 0);
}
