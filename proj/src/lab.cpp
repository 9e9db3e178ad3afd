#include "hlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hlab/cones.hpp"
#include "hlab/io.hpp"
#include "hlab/normalform2d.hpp"
#include "hlab/torus.hpp"

namespace hlab {

bool strictly_decreasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

void write_hausdorff_csv(std::ostream& os, const std::string& kind, const HausdorffResult& r) {
  csv_header(os, kind + " " + r.resolution, {"t", "hausdorff"});
  for (size_t i = 0; i < r.t_values.size(); ++i) os << num(r.t_values[i]) << ',' << num(r.distances[i]) << '\n';
}

static void check_t_list(const std::vector<double>& t_list) {
  require(!t_list.empty(), "t list is empty");
  for (size_t i = 0; i < t_list.size(); ++i) {
    require(t_list[i] != 0, "t list must not contain 0");
    require((t_list[i] > 0) == (t_list[0] > 0), "t list must have a single sign");
    if (i) require(std::abs(t_list[i]) < std::abs(t_list[i - 1]), "t list must descend to 0");
  }
}

PointCloud julia_cloud(const HenonParams& H, const ContinuityOptions& opt) {
  SolidTorus T = torus_fixed_point(H, opt.iters, opt.angles, opt.degree);
  return julia_from_sigma(H, T, opt.depth, opt.seeds);
}

PointCloud slice_cloud(const HenonParams& H, const ContinuityOptions& opt) {
  return jplus_slice(H, opt.window, opt.slice_res, opt.max_iter).boundary;
}

ContinuityResult continuity_experiment(Rational pq, cx a, const std::vector<double>& t_list,
                                       const ContinuityOptions& opt) {
  check_t_list(t_list);
  HenonParams H0 = make_params(pq, 0, a);
  PointCloud J0 = julia_cloud(H0, opt), S0 = slice_cloud(H0, opt);
  ContinuityResult res;
  std::ostringstream meta;
  meta << "angles=" << opt.angles << " degree=" << opt.degree << " iters=" << opt.iters << " depth=" << opt.depth
       << " seeds=" << opt.seeds;
  res.julia.resolution = meta.str();
  res.slice.resolution = "res=" + std::to_string(opt.slice_res) + " max_iter=" + std::to_string(opt.max_iter);
  for (double t : t_list) {
    HenonParams H = make_params(pq, t, a);
    res.julia.t_values.push_back(t);
    res.julia.distances.push_back(hausdorff(julia_cloud(H, opt), J0));
    res.slice.t_values.push_back(t);
    res.slice.distances.push_back(hausdorff(slice_cloud(H, opt), S0));
  }
  return res;
}

PointCloud loop_cloud(const LoopSample& loop) {
  PointCloud c;
  for (auto v : loop.values) c.points.push_back({v, 0.0});
  return c;
}

HausdorffResult radial_demo(Rational pq, const std::vector<double>& t_list, int N, int n_iters) {
  check_t_list(t_list);
  PointCloud ref = loop_cloud(caratheodory(PolyParams::on_family(pq, 0), N, n_iters));
  HausdorffResult r;
  r.resolution = "angles=" + std::to_string(N) + " iters=" + std::to_string(n_iters);
  for (double t : t_list) {
    r.t_values.push_back(t);
    r.distances.push_back(hausdorff(loop_cloud(caratheodory(PolyParams::on_family(pq, t), N, n_iters)), ref));
  }
  return r;
}

const char* to_string(Connectivity c) {
  return c == Connectivity::CONNECTED_BY_CONSTRUCTION ? "CONNECTED-BY-CONSTRUCTION" : "UNKNOWN";
}

std::vector<std::uint8_t> ConnectivityScan::pixels() const {
  std::vector<std::uint8_t> px(cells.size());
  for (size_t i = 0; i < cells.size(); ++i)
    px[i] = cells[i].verdict == Connectivity::CONNECTED_BY_CONSTRUCTION ? 255 : 96;
  return px;
}

ConnectivityScan connectivity_scan(Rational pq, double t, double half_width, int res, const ConnectivityOptions& opt) {
  require(res >= 1, "connectivity_scan: resolution must be positive");
  require(half_width > 0 && half_width < 0.5, "connectivity_scan: a window must lie in |a| < 1/2");
  ConnectivityScan scan;
  scan.res = res;
  scan.half_width = half_width;
  scan.cells.resize(size_t(res) * res);
  auto coord = [&](int i) { return res == 1 ? 0.0 : -half_width + 2 * half_width * i / (res - 1); };
  std::vector<size_t> idx(scan.cells.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::for_each(std::execution::par, idx.begin(), idx.end(), [&](size_t id) {
    ConnectivityCell& cell = scan.cells[id];
    int row = int(id / res), col = int(id % res);
    cell.a = cx(coord(col), -coord(row));
    if (std::abs(cell.a) < 1e-14) {
      cell.note = "a = 0";
      return;
    }
    try {
      HenonParams H = make_params(pq, t, cell.a);
      SolidTorus T = torus_fixed_point(H, opt.iters, opt.angles, opt.degree);
      const auto& g = T.gaps;
      cell.final_gap = g.back();
      size_t n = g.size(), back = std::min<size_t>(5, n - 1);
      cell.contraction = back ? std::pow(g[n - 1] / g[n - 1 - back], 1.0 / back) : 1;
      cell.separation = separation(T);
      double tail = cell.contraction < 1 ? cell.final_gap * cell.contraction / (1 - cell.contraction) : 1e300;
      if (cell.final_gap < opt.gap_tol && cell.contraction < 1 && tail < cell.separation / 4)
        cell.verdict = Connectivity::CONNECTED_BY_CONSTRUCTION;
      else
        cell.note = "no convergence certificate";
    } catch (const std::exception& e) {
      cell.note = e.what();
    }
  });
  return scan;
}

void write_connectivity_csv(std::ostream& os, const ConnectivityScan& s) {
  csv_header(os, "connectivity", {"a_re", "a_im", "verdict", "final_gap", "contraction", "separation", "note"});
  for (auto& c : s.cells)
    os << num(c.a.real()) << ',' << num(c.a.imag()) << ',' << to_string(c.verdict) << ',' << num(c.final_gap) << ','
       << num(c.contraction) << ',' << num(c.separation) << ",\"" << c.note << "\"\n";
}

// ---- configuration ----

static std::string join(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "subcommand=" << subcommand << "\npq=" << pq << "\nt=" << num(t) << "\na=" << num(a) << "\na_im=" << num(a_im)
     << "\nangles=" << angles << "\ndegree=" << degree << "\niters=" << iters << "\nres=" << res
     << "\nsamples=" << samples << "\nsteps=" << steps << "\ntol=" << num(tol) << "\nseed=" << seed
     << "\nt_list=" << join(t_list) << "\nt_min=" << num(t_min) << "\nt_max=" << num(t_max)
     << "\na_min=" << num(a_min) << "\na_max=" << num(a_max) << "\nout=" << out << '\n';
  return os.str();
}

static std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

template <class T>
static T parse_num(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T x;
  if (!(is >> x) || !(is >> std::ws).eof()) throw precondition_error("config: bad value for " + key + ": " + v);
  return x;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw precondition_error("config: expected key=value, got: " + line);
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (k == "subcommand") c.subcommand = v;
    else if (k == "pq") c.pq = v;
    else if (k == "t") c.t = parse_num<double>(k, v);
    else if (k == "a") c.a = parse_num<double>(k, v);
    else if (k == "a_im") c.a_im = parse_num<double>(k, v);
    else if (k == "angles") c.angles = parse_num<int>(k, v);
    else if (k == "degree") c.degree = parse_num<int>(k, v);
    else if (k == "iters") c.iters = parse_num<int>(k, v);
    else if (k == "res") c.res = parse_num<int>(k, v);
    else if (k == "samples") c.samples = parse_num<int>(k, v);
    else if (k == "steps") c.steps = parse_num<int>(k, v);
    else if (k == "tol") c.tol = parse_num<double>(k, v);
    else if (k == "seed") c.seed = parse_num<unsigned long long>(k, v);
    else if (k == "t_min") c.t_min = parse_num<double>(k, v);
    else if (k == "t_max") c.t_max = parse_num<double>(k, v);
    else if (k == "a_min") c.a_min = parse_num<double>(k, v);
    else if (k == "a_max") c.a_max = parse_num<double>(k, v);
    else if (k == "out") c.out = v;
    else if (k == "t_list") {
      c.t_list.clear();
      std::istringstream ts(v);
      std::string item;
      while (std::getline(ts, item, ',')) c.t_list.push_back(parse_num<double>(k, trim(item)));
    } else
      throw precondition_error("config: unknown key " + k);
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw precondition_error("config: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

// ---- subcommands ----

namespace {

struct Out {
  std::filesystem::path dir;
  std::vector<std::string> written;

  std::ofstream open(const std::string& name) {
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw precondition_error("cannot write " + p.string());
    written.push_back(p.string());
    return f;
  }
  void image(const std::string& name, int w, int h, const std::vector<std::uint8_t>& px) {
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    write_pgm(p.string(), w, h, px);
    written.push_back(p.string());
  }
};

void write_map_csv(std::ostream& os, const std::string& name, const Map2& m) {
  for (int comp = 0; comp < 2; ++comp)
    for (int deg = 0; deg <= m[comp].order(); ++deg)
      for (int j = 0; j <= deg; ++j) {
        cx v = m[comp].coeff(deg - j, j);
        if (v == 0.0) continue;
        os << name << ',' << comp << ',' << deg - j << ',' << j << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
      }
}

void write_cone_row(std::ostream& os, const ConeReport& r) {
  os << '"' << r.region << "\",\"" << r.metric << "\"," << r.samples << ',' << num(r.worst_h_expansion) << ','
     << num(r.worst_v_expansion) << ',' << num(r.min_abs_xq) << ',' << num(r.n_at) << ',' << num(r.h_bound_margin)
     << ',' << r.invariance_failures.size() << ',' << to_string(r.verdict) << '\n';
}

}  // namespace

std::vector<std::string> run(const RunConfig& cfg, std::ostream& log) {
  Rational pq = Rational::parse(cfg.pq);
  cx a(cfg.a, cfg.a_im);
  Out out{cfg.out, {}};
  const std::string& sub = cfg.subcommand;

  if (sub == "caratheodory") {
    PolyParams P = PolyParams::on_family(pq, cfg.t);
    LoopSample loop = caratheodory(P, cfg.angles, cfg.iters);
    auto f = out.open("caratheodory.csv");
    write_loop_csv(f, loop);
    log << "caratheodory c=" << num(P.c.real()) << "+" << num(P.c.imag()) << "i doubling_defect="
        << num(doubling_defect(P, loop)) << '\n';
  } else if (sub == "normal-form") {
    HenonParams H = make_params(pq, cfg.t, a);
    NormalForm2D nf = reduce(H, default_order(pq.q));
    auto f = out.open("normal-form.csv");
    csv_header(f, "normal-form D=" + std::to_string(nf.D), {"map", "component", "i", "j", "re", "im"});
    write_map_csv(f, "change", nf.change);
    write_map_csv(f, "normal", nf.normal);
    log << "normal-form C_at=" << num(nf.C_at.real()) << "+" << num(nf.C_at.imag())
        << "i residual=" << num(conjugacy_residual(H, nf, nf.D)) << '\n';
  } else if (sub == "petal-check") {
    HenonParams H = make_params(pq, cfg.t, a);
    NormalForm2D nf = reduce(H, default_order(pq.q));
    PetalOptions po;
    po.samples = cfg.samples;
    po.steps = cfg.steps;
    po.tol = cfg.tol;
    po.seed = cfg.seed;
    TrappingReport rep = petal_check(H, nf, po);
    auto f = out.open("petal-check.csv");
    rep.write_csv(f);
    log << "petal-check target=" << rep.target << " passed=" << rep.passed << "/" << rep.samples.size()
        << " certified_radius=" << num(rep.certified_radius) << " fattening=" << num(rep.fattening) << '\n';
  } else if (sub == "cone-check") {
    HenonParams H = make_params(pq, cfg.t, a);
    NormalForm2D nf = reduce(H, default_order(pq.q));
    ConeReport loc = local_cone_check(H, nf, sector_samples(H, cfg.samples, default_rho, 0.1, cfg.seed));
    auto f = out.open("cone-check.csv");
    csv_header(f, "cone-check", {"region", "metric", "samples", "worst_h_expansion", "worst_v_expansion",
                                 "min_abs_xq", "n_at", "h_bound_margin", "invariance_failures", "verdict"});
    write_cone_row(f, loc);
    log << "cone-check local " << to_string(loc.verdict) << " worst_h=" << num(loc.worst_h_expansion) << '\n';
    if (a != 0.0) {
      VSpec v;
      v.angles = cfg.angles;
      v.iters = cfg.iters;
      v.degree = cfg.degree;
      ConeReport glo = global_cone_check(H, v, cfg.samples);
      write_cone_row(f, glo);
      log << "cone-check global " << to_string(glo.verdict) << " worst_h=" << num(glo.worst_h_expansion)
          << " worst_v=" << num(glo.worst_v_expansion) << '\n';
    }
  } else if (sub == "hyp-scan") {
    auto cells = hyperbolicity_scan(pq, {cfg.t_min, cfg.t_max}, {cfg.a_min, cfg.a_max}, {cfg.res, cfg.res});
    auto f = out.open("hyp-scan.csv");
    write_scan_csv(f, cells);
    std::vector<std::uint8_t> px(cells.size());
    // image: a along x, t along y (top row = t_max)
    for (int i = 0; i < cfg.res; ++i)
      for (int j = 0; j < cfg.res; ++j) {
        Verdict v = cells[size_t(cfg.res - 1 - i) * cfg.res + j].verdict;
        px[size_t(i) * cfg.res + j] = v == Verdict::PASS ? 255 : v == Verdict::MARGINAL ? 170 : v == Verdict::FAIL ? 60 : 0;
      }
    out.image("hyp-scan.pgm", cfg.res, cfg.res, px);
    int pass = int(std::count_if(cells.begin(), cells.end(), [](auto& c) { return c.verdict == Verdict::PASS; }));
    log << "hyp-scan cells=" << cells.size() << " pass=" << pass << '\n';
  } else if (sub == "torus-iterate") {
    HenonParams H = make_params(pq, cfg.t, a);
    SolidTorus T = torus_fixed_point(H, cfg.iters, cfg.angles, cfg.degree);
    auto f = out.open("torus.csv");
    write_torus_csv(f, T);
    auto g = out.open("torus-gaps.csv");
    csv_header(g, "torus-gaps", {"iteration", "gap"});
    for (size_t i = 0; i < T.gaps.size(); ++i) g << i + 1 << ',' << num(T.gaps[i]) << '\n';
    log << "torus-iterate final_gap=" << num(T.gaps.back()) << " separation=" << num(separation(T))
        << " semiconjugacy=" << num(semiconjugacy_residual(H, T, 256)) << '\n';
  } else if (sub == "continuity") {
    ContinuityOptions co;
    co.angles = cfg.angles;
    co.degree = cfg.degree;
    co.iters = cfg.iters;
    co.slice_res = cfg.res;
    ContinuityResult r = continuity_experiment(pq, a, cfg.t_list, co);
    auto f = out.open("continuity-julia.csv");
    write_hausdorff_csv(f, "continuity-julia", r.julia);
    auto g = out.open("continuity-slice.csv");
    write_hausdorff_csv(g, "continuity-slice", r.slice);
    log << "continuity julia_decreasing=" << strictly_decreasing(r.julia.distances)
        << " slice_decreasing=" << strictly_decreasing(r.slice.distances) << '\n';
  } else if (sub == "connectivity-scan") {
    ConnectivityOptions co;
    co.angles = cfg.angles;
    co.degree = cfg.degree;
    co.iters = cfg.iters;
    ConnectivityScan s = connectivity_scan(pq, cfg.t, cfg.a_max, cfg.res, co);
    auto f = out.open("connectivity-scan.csv");
    write_connectivity_csv(f, s);
    out.image("connectivity-scan.pgm", s.res, s.res, s.pixels());
    int conn = int(std::count_if(s.cells.begin(), s.cells.end(),
                                 [](auto& c) { return c.verdict == Connectivity::CONNECTED_BY_CONSTRUCTION; }));
    log << "connectivity-scan cells=" << s.cells.size() << " connected=" << conn << '\n';
  } else if (sub == "radial-demo") {
    HausdorffResult r = radial_demo(pq, cfg.t_list, cfg.angles, cfg.iters);
    auto f = out.open("radial-demo.csv");
    write_hausdorff_csv(f, "radial-demo", r);
    log << "radial-demo decreasing=" << strictly_decreasing(r.distances) << '\n';
  } else {
    throw precondition_error("unknown subcommand: " + sub);
  }
  return out.written;
}

}  // namespace hlab
