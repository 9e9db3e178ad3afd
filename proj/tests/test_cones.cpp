#include <doctest.h>

#include <sstream>

#include "hlab/cones.hpp"

using namespace hlab;

TEST_CASE("local cones at a single real point with a = 0") {
  HenonParams H = make_params({1, 1}, 0, 0.0);
  NormalForm2D nf = reduce(H, default_order(1));
  ConeReport r = local_cone_check(H, nf, {{0.1, 0.0}});
  CHECK(r.worst_h_expansion == doctest::Approx(1.2).epsilon(1e-6));
  CHECK(r.worst_h_expansion > 1 + 1.5 * eps1 * 0.1);
  CHECK(r.worst_v_expansion == vertical_cap);
  CHECK(r.verdict == Verdict::PASS);
}

TEST_CASE("local cones reject samples outside the sector") {
  HenonParams H = make_params({1, 1}, 0, 0.05);
  NormalForm2D nf = reduce(H, default_order(1));
  CHECK_THROWS_AS(local_cone_check(H, nf, {{cx(0, 0.1), 0.0}}), precondition_error);
  CHECK_THROWS_AS(local_cone_check(H, nf, {{0.3, 0.0}}), precondition_error);

  HenonParams N = make_params({1, 2}, -0.01, 0.05);
  NormalForm2D nfn = reduce(N, default_order(2));
  CHECK_THROWS_AS(local_cone_check(N, nfn, {{std::sqrt(0.004), 0.0}}), precondition_error);
  for (auto& p : sector_samples(N, 500)) CHECK(std::abs(p[0] * p[0]) > repel_radius(2, -0.01));
}

TEST_CASE("local cones on the repelling sector") {
  for (int q : {1, 2})
    for (double t : {0.0, 0.05}) {
      HenonParams H = make_params({1, q}, t, 0.05);
      NormalForm2D nf = reduce(H, default_order(q));
      ConeReport r = local_cone_check(H, nf, sector_samples(H, 2000));
      CHECK(r.verdict == Verdict::PASS);
      CHECK(r.invariance_failures.empty());
      CHECK(r.worst_h_expansion >= 1 + (q + 0.5) * eps1 * r.min_abs_xq * 0.95);
      CHECK(r.n_at < 0.05);
    }
}

TEST_CASE("expansion estimate on the annulus") {
  for (int q : {2, 3})
    for (double t : {-0.01, -0.003}) {
      HenonParams H = make_params({1, q}, t, 0.05);
      double lam = std::abs(H.lambda), Rt = repel_radius(q, t);
      double hi = std::max(std::pow(default_rho, q), 2 * Rt);  // for q = 3, t = -0.01 the annulus exceeds rho^q
      int bad = 0;
      for (int i = 0; i < 2000; ++i) {
        double xq = Rt + (hi - Rt) * (i + 0.5) / 2000;
        bad += !(lam * (1 + (q + 0.5) * eps1 * xq) > (1 + eps2(q) * std::abs(t)) * (1 + eps1 / 16 * xq));
      }
      CHECK(bad == 0);
    }
}

TEST_CASE("global cones") {
  HenonParams H = make_params({1, 1}, 0.1, 0.05);
  VSpec v;
  ConeReport r = global_cone_check(H, v, 400);
  CHECK(r.verdict == Verdict::PASS);
  CHECK(r.worst_h_expansion > 1.001);
  CHECK(r.worst_v_expansion >= 0.95 / 0.05);

  VSpec fine = v;
  fine.angles = 1024;
  ConeReport r2 = global_cone_check(H, fine, 400);
  CHECK(r2.verdict == Verdict::PASS);
  CHECK(r2.worst_h_expansion == doctest::Approx(r.worst_h_expansion).epsilon(0.02));

  CHECK_THROWS_AS(global_cone_check(make_params({1, 1}, 0.1, 0.0), v, 10), precondition_error);
  VSpec bad = v;
  bad.rho_B = 0.6;
  CHECK_THROWS_AS(validate(H, bad), precondition_error);
}

TEST_CASE("cone nesting at the boundary of B") {
  // the strong stable tilt is about |a|; nesting needs it below rho^{2q}
  HenonParams small = make_params({1, 1}, 0.1, 0.002);
  NestingResult n = cone_nesting_at_B(small, reduce(small, default_order(1)), default_tau);
  CHECK(n.samples == 256);
  CHECK(n.failures == 0);

  HenonParams big = make_params({1, 1}, 0.1, 0.05);
  NestingResult m = cone_nesting_at_B(big, reduce(big, default_order(1)), default_tau);
  CHECK(m.worst_ratio > 1);
}

TEST_CASE("hyperbolicity scan") {
  ScanOptions opt;
  opt.local_samples = 200;
  opt.global_samples = 100;
  auto cells = hyperbolicity_scan({1, 1}, {-0.02, 0.02}, {-0.05, 0.05}, {3, 3}, opt);
  REQUIRE(cells.size() == 9);
  auto at = [&](int i, int j) { return cells[size_t(i) * 3 + j]; };
  for (int i = 0; i < 3; ++i) CHECK(at(i, 1).verdict == Verdict::EXCLUDED);
  CHECK(at(1, 0).verdict == Verdict::MARGINAL);
  CHECK(at(1, 2).verdict == Verdict::MARGINAL);
  for (int i = 0; i < 3; ++i) CHECK(at(i, 0).verdict == at(i, 2).verdict);
  CHECK(at(2, 2).verdict == Verdict::PASS);
  std::ostringstream os;
  write_scan_csv(os, cells);
  CHECK(os.str().rfind("# hlab-csv v1 hyp-scan", 0) == 0);
}
