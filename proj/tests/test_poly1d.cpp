#include <doctest.h>

#include <random>
#include <sstream>

#include "hlab/lab.hpp"
#include "hlab/poly1d.hpp"

using namespace hlab;

TEST_CASE("rotation numbers") {
  CHECK(Rational::parse("2/5") == Rational{2, 5});
  CHECK(Rational::parse("0/1") == Rational{0, 1});
  CHECK_THROWS_AS(Rational::parse("2/4"), precondition_error);
  CHECK_THROWS_AS(Rational::parse("3/2"), precondition_error);
  CHECK_THROWS_AS(Rational::parse("1-2"), precondition_error);
}

TEST_CASE("family members") {
  for (auto pq : {Rational{1, 1}, Rational{1, 2}, Rational{1, 3}, Rational{2, 5}})
    for (double t : {-0.02, 0.0, 0.05}) {
      PolyParams P = PolyParams::on_family(pq, t);
      CHECK(std::abs(P.c - (P.lambda / 2.0 - P.lambda * P.lambda / 4.0)) < 1e-15);
      CHECK(std::abs(P(P.alpha) - P.alpha) < 1e-12);
      CHECK(std::abs(2.0 * P.alpha - P.lambda) < 1e-12);
    }
  CHECK(PolyParams::on_family({1, 2}, 0).lambda == cx(-1));
  CHECK(PolyParams::on_family({1, 1}, 0).c == cx(0.25));
}

TEST_CASE("sector constants") {
  CHECK(eps1 == doctest::Approx(0.6427876097).epsilon(1e-9));
  CHECK(eps1 > 0.6);
  CHECK(repel_radius(2, -0.01) == doctest::Approx(0.006667).epsilon(1e-3));
}

TEST_CASE("green function") {
  CHECK(green(PolyParams::from_multiplier(0.0), 2.0, 60) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  PolyParams P = PolyParams::on_family({1, 1}, 0);
  CHECK(green(P, 0.5, 60) == 0.0);
  double g = green(P, 2.0, 60);
  CHECK(g > 0.55);
  CHECK(g < 0.75);
  for (int n = 40; n <= 60; n += 5) CHECK(green(P, 2.0, n) == doctest::Approx(g).epsilon(1e-8));
}

TEST_CASE("pullback of equipotentials") {
  PolyParams P0 = PolyParams::from_multiplier(0.0);
  LoopSample circle;
  circle.level = std::log(4.0);
  for (int k = 0; k < 256; ++k) circle.values.push_back(std::polar(4.0, 2 * pi * k / 256));
  LoopSample half = pullback_loop(P0, circle);
  for (int k = 0; k < 256; ++k) CHECK(std::abs(half.values[k] - std::polar(2.0, 2 * pi * k / 256)) < 1e-12);

  PolyParams P = PolyParams::on_family({1, 1}, 0);
  LoopSample base = base_equipotential(P, 512);
  LoopSample out = pullback_loop(P, base);
  double err = 0;
  for (int k = 0; k < 512; ++k) err = std::max(err, std::abs(P(out.values[k]) - base.values[(2 * k) % 512]));
  CHECK(err < 1e-12);

  // c = -3/4: 20 pullbacks of the base loop contract
  LoopSample L = caratheodory(PolyParams::on_family({1, 2}, 0), 1024, 20);
  REQUIRE(L.gaps.size() == 20);
  for (size_t n = 6; n < L.gaps.size(); ++n) CHECK(L.gaps[n] <= L.gaps[n - 1]);
}

TEST_CASE("caratheodory loops") {
  LoopSample S = caratheodory(PolyParams::from_multiplier(0.0), 1024, 40);
  for (auto v : S.values) CHECK(std::abs(std::abs(v) - 1) < 1e-10);

  // parabolic landing is only ~1/n fast: 40 pullbacks leave gamma(0) about 0.027 from 1/2
  PolyParams P = PolyParams::on_family({1, 1}, 0);
  LoopSample L40 = caratheodory(P, 4096, 40);
  LoopSample L120 = caratheodory(P, 4096, 120);
  CHECK(std::abs(L40.values[0] - 0.5) < 3e-2);
  CHECK(std::abs(L120.values[0] - 0.5) < 1e-2);

  // Chebyshev case: J = [-2, 2]
  PolyParams C = PolyParams::from_multiplier(cx(1 + std::sqrt(9.0)));  // c = 2 - 4 = -2
  REQUIRE(std::abs(C.c + 2.0) < 1e-12);
  LoopSample T = caratheodory(C, 4096, 8);
  PointCloud seg;
  for (int k = 0; k <= 4000; ++k) seg.points.push_back({-2.0 + 4.0 * k / 4000, 0.0});
  CHECK(hausdorff(loop_cloud(T), seg) < 1e-2);

  // functional equation on the limit loop
  for (double t : {0.05, -0.02}) {
    PolyParams Q = PolyParams::on_family({1, 2}, t);
    LoopSample G = caratheodory(Q, 2048, 60);
    // gaps reach rounding level; below 1e-13 they are noise
    for (size_t n = 6; n < G.gaps.size(); ++n) CHECK(G.gaps[n] <= std::max(G.gaps[n - 1], 1e-13));
    CHECK(doubling_defect(Q, G) < 10 * std::max(G.gaps.back(), 1e-13));
  }
}

TEST_CASE("one-dimensional normal form") {
  struct Case {
    int q;
    double t;
  };
  for (Case c : {Case{1, 0}, Case{2, 0}, Case{3, 0}, Case{1, 0.05}, Case{2, -0.02}}) {
    PolyParams P = PolyParams::on_family({1, c.q}, c.t);
    int D = 2 * c.q + 4;
    NormalForm1D nf = normal_form_1d(P, D);
    TruncSeries1 lhs = compose1(nf.change, centered_poly(P, D));
    TruncSeries1 rhs = compose1(nf.normal, nf.change);
    CHECK(max_abs_diff(lhs.truncated(2 * c.q + 3), rhs.truncated(2 * c.q + 3)) < 1e-10);
    for (int k = 2; k <= 2 * c.q + 1; ++k)
      if ((k - 1) % c.q != 0) CHECK(std::abs(nf.normal[k]) < 1e-10);
    CHECK(std::abs(nf.normal[1] - P.lambda) < 1e-12);
    CHECK(std::abs(nf.normal[c.q + 1] - P.lambda) < 1e-10);
  }
  NormalForm1D one = normal_form_1d(PolyParams::on_family({1, 1}, 0), 6);
  CHECK(std::abs(one.C) < 1e-12);
  CHECK(std::abs(one.normal[2] - 1.0) < 1e-12);
  NormalForm1D two = normal_form_1d(PolyParams::on_family({1, 2}, 0), 8);
  CHECK(std::abs(two.normal[2]) < 1e-12);
  CHECK(std::abs(two.normal[3] + 1.0) < 1e-12);
}

TEST_CASE("sectors") {
  PolyParams P = PolyParams::on_family({1, 1}, 0);
  CHECK(sector_1d(P, 0.1) == Sector::repelling);
  CHECK(sector_1d(P, cx(0, 0.1)) == Sector::attracting);
  CHECK(sector_1d(P, 0.5) == Sector::outside);
  CHECK(sector_1d(PolyParams::on_family({1, 2}, -0.01), std::sqrt(0.004)) == Sector::attracting);
  CHECK(sector_1d(PolyParams::on_family({1, 2}, -0.01), std::sqrt(0.01)) == Sector::repelling);
}

// The first-order term gives |1 + (q+1) x^q| >= 1 + (q+1) eps1 |x|^q on the sector, so the
// factor (q+1/2) eps1 is what survives the O(|x|^{2q}) tail; (q+3/2) fails at the sector edge.
TEST_CASE("derivative expansion on the repelling sector") {
  struct Case {
    int q;
    double t;
  };
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (Case c : {Case{1, 0}, Case{1, 0.05}, Case{2, 0}}) {
    PolyParams P = PolyParams::on_family({1, c.q}, c.t);
    NormalForm1D nf = normal_form_1d(P, 2 * c.q + 4);
    TruncSeries1 d = nf.normal.derivative();
    double lam = std::abs(P.lambda);
    int bad = 0, bad_literal = 0;
    for (int i = 0; i < 1000; ++i) {
      double m = std::pow(default_rho, c.q) * (1e-3 + (1 - 1e-3) * u(rng));
      double ang = (2 * u(rng) - 1) * std::atan(1 / eps0) * 0.99;
      cx x = std::polar(std::pow(m, 1.0 / c.q), (ang + 2 * pi * int(u(rng) * c.q)) / c.q);
      REQUIRE(in_repelling_sector(std::pow(x, c.q)));
      double xq = std::abs(std::pow(x, c.q));
      bad += !(std::abs(d.eval(x)) > lam * (1 + (c.q + 0.5) * eps1 * xq));
      bad_literal += !(std::abs(d.eval(x)) > lam * (1 + (c.q + 1.5) * eps1 * xq));
    }
    CHECK(bad == 0);
    CHECK(bad_literal > 0);
  }
}

TEST_CASE("loop csv") {
  LoopSample L;
  L.values = {cx(1, 0), cx(0, 1)};
  L.level = 0.5;
  std::ostringstream os;
  write_loop_csv(os, L);
  CHECK(os.str() == "# hlab-csv v1 loop\nk,s,re,im,level\n0,0,1,0,0.5\n1,0.5,0,1,0.5\n");
}
