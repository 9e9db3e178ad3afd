#include <doctest.h>

#include <sstream>

#include "hlab/normalform2d.hpp"

using namespace hlab;

static double dist(Pt a, Pt b) { return std::hypot(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

TEST_CASE("strong stable manifold jet") {
  TruncSeries1 W0 = wss_graph(make_params({1, 1}, 0.05, 0.0), 8);
  CHECK(W0.max_abs() == 0.0);

  HenonParams H = make_params({1, 1}, 0, 0.1);
  TruncSeries1 W = wss_graph(H, 12);
  CHECK(std::abs(W[1] - (-H.a / H.lambda)) < 1e-10);
  CHECK(std::abs(W[1] - H.nu / H.a) < 1e-10);

  for (cx v : {cx(0.1), cx(0, 0.1), cx(-0.07, 0.05)}) {
    Pt p{H.q_fixed[0] + W.eval(v), H.q_fixed[1] + v};
    double d0 = dist(p, H.q_fixed);
    Pt p1 = henon(H, p);
    double ratio = dist(p1, H.q_fixed) / d0;
    CHECK(ratio == doctest::Approx(std::abs(H.nu)).epsilon(0.2));
  }
}

TEST_CASE("reduction conjugates the map") {
  struct Case {
    Rational pq;
    double t;
    cx a;
  };
  for (Case c : {Case{{1, 1}, 0.05, 0.05}, Case{{1, 2}, -0.02, 0.05}, Case{{1, 3}, 0, cx(0.03, 0.02)},
                 Case{{2, 5}, 0.01, 0.02}}) {
    HenonParams H = make_params(c.pq, c.t, c.a);
    NormalForm2D nf = reduce(H, default_order(c.pq.q));
    int q = c.pq.q;
    CHECK(conjugacy_residual(H, nf, 5) < 1e-8);
    CHECK(conjugacy_residual(H, nf, nf.D) < 1e-8);
    for (int k = 2; k <= 2 * q + 1; ++k)
      if ((k - 1) % q != 0) CHECK(std::abs(nf.normal[0].at(k, 0)) < 1e-9);
    CHECK(std::abs(nf.normal[0].at(1, 0) - H.lambda) < 1e-12);
    CHECK(std::abs(nf.normal[0].at(q + 1, 0) - H.lambda) < 1e-9);
    CHECK(std::abs(nf.normal[0].at(0, 1)) < 1e-12);
    CHECK(std::abs(nf.normal[1].at(0, 1) - H.nu) < 1e-12);
    // second component is nu y + x h(x, y) with h(0,0) = 0
    CHECK(std::abs(nf.normal[1].at(1, 0)) < 1e-12);
    for (int j = 2; j <= nf.D; ++j) CHECK(std::abs(nf.normal[1].at(0, j)) < 1e-10);
    // fixed point kept, linear part before the shear is triangular with diagonal (A, 1)
    CHECK(std::abs(nf.change[0].at(0, 0)) + std::abs(nf.change[1].at(0, 0)) < 1e-15);
    CHECK(std::abs(nf.horizontal[0].at(1, 0) - nf.rescale) < 1e-12);
    CHECK(std::abs(nf.horizontal[1].at(1, 0)) < 1e-15);
    CHECK(std::abs(nf.horizontal[1].at(0, 1) - 1.0) < 1e-12);
    // horizontality: y-part of the change before the shear does not depend on x
    for (int n = 1; n <= nf.D; ++n)
      for (int i = 1; i <= n; ++i) CHECK(std::abs(nf.horizontal[1].at(i, n - i)) < 1e-10);
  }
}

TEST_CASE("a = 0 reduces to the one-dimensional normal form") {
  for (auto pq : {Rational{1, 1}, Rational{1, 2}, Rational{1, 3}}) {
    HenonParams H = make_params(pq, 0.01, 0.0);
    NormalForm2D nf = reduce(H, default_order(pq.q));
    NormalForm1D one = normal_form_1d(H.poly, default_order(pq.q));
    for (int k = 1; k <= nf.D; ++k) CHECK(std::abs(nf.normal[0].at(k, 0) - one.normal[k]) < 1e-10);
    CHECK(nf.normal[1].max_abs() < 1e-12);
    CHECK(std::abs(nf.C_at - one.C) < 1e-10);
  }
  // the limit a -> 0
  HenonParams H = make_params({1, 2}, -0.02, 1e-5);
  NormalForm2D nf = reduce(H, default_order(2));
  NormalForm1D one = normal_form_1d(H.poly, default_order(2));
  for (int k = 1; k <= 5; ++k) CHECK(std::abs(nf.normal[0].at(k, 0) - one.normal[k]) < 1e-8);
}

TEST_CASE("coordinate round trip") {
  HenonParams H = make_params({1, 1}, 0.05, 0.05);
  NormalForm2D nf = reduce(H, default_order(1));
  Pt p = from_normal(H, nf, {cx(-0.05, 0.02), cx(0.01, 0)});
  Pt n = to_normal(H, nf, p);
  CHECK(dist(n, {cx(-0.05, 0.02), cx(0.01, 0)}) < 1e-10);
  CHECK(dist(from_normal(H, nf, {0.0, 0.0}), H.q_fixed) < 1e-15);
}

TEST_CASE("petal combinatorics follow the rotation number") {
  for (auto pq : {Rational{1, 1}, Rational{1, 2}, Rational{1, 3}, Rational{2, 5}}) {
    HenonParams H = make_params(pq, 0, 0.02);
    NormalForm2D nf = reduce(H, default_order(pq.q));
    PetalOptions po;
    po.samples = 300;
    TrappingReport rep = petal_check(H, nf, po);
    CHECK(rep.target == "none");
    int rot = 0;
    for (auto& s : rep.samples) rot += s.rotation_ok;
    CHECK(rot == 300);
  }
}

TEST_CASE("trapping toward the attracting cycle") {
  HenonParams H = make_params({1, 1}, 0.05, 0.05);
  NormalForm2D nf = reduce(H, default_order(1));
  PetalOptions po;
  po.samples = 200;
  TrappingReport rep = petal_check(H, nf, po);
  CHECK(rep.target == "cycle");
  CHECK(rep.all_pass());
  CHECK(rep.certified_radius > 0);
  REQUIRE(rep.cycle.size() == 1);
  CHECK(dist(henon(H, rep.cycle[0]), rep.cycle[0]) < 1e-10);
  std::ostringstream os;
  rep.write_csv(os);
  CHECK(os.str().rfind("# hlab-csv v1 trapping target=cycle", 0) == 0);
}

TEST_CASE("petal radius") {
  CHECK(petal_R(1, 0, 0.15) == doctest::Approx(std::sqrt(2.0) / 0.15));
  CHECK(petal_R(1, 0.05, 0.15) < petal_R(1, 0, 0.15));
  CHECK_THROWS_AS(petal_R(2, 0.45, 0.15), precondition_error);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(reduce(make_params({1, 1}, 0, 0.05), 3), precondition_error);
}
