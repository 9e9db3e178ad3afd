#include <CLI11.hpp>
#include <iostream>
#include <utility>

#include "hlab/lab.hpp"

int main(int argc, char** argv) {
  CLI::App app{"henonlab: semi-parabolic Henon maps, normal forms, cones and Julia-set continuity"};
  app.require_subcommand(1);

  hlab::RunConfig cfg;
  std::string config_path;
  const std::pair<const char*, const char*> subs[] = {
      {"caratheodory", "pullback loops of the base equipotential of p_t"},
      {"normal-form", "jets of the coordinate change and the normal form at the semi-parabolic point"},
      {"petal-check", "orbits started in the attracting petals"},
      {"cone-check", "local and global cone-field verification"},
      {"hyp-scan", "cone verdicts over a (t, a) grid"},
      {"torus-iterate", "graph transform on solid tori of vertical disks"},
      {"continuity", "Hausdorff distance of J and of the J+ slice to t = 0"},
      {"connectivity-scan", "graph-transform convergence over a complex a window"},
      {"radial-demo", "Hausdorff distance of one-dimensional Julia sets to t = 0"}};
  for (auto [name, help] : subs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key=value file; flags given on the command line override it");
    sub->add_option("--pq", cfg.pq, "rotation number p/q");
    sub->add_option("--t", cfg.t, "radial parameter t");
    sub->add_option("--a", cfg.a, "Jacobian parameter a (real part)");
    sub->add_option("--a-im", cfg.a_im, "imaginary part of a");
    sub->add_option("--angles", cfg.angles, "number of external angles");
    sub->add_option("--degree", cfg.degree, "polynomial degree of the disks");
    sub->add_option("--iters", cfg.iters, "iteration count");
    sub->add_option("--res", cfg.res, "grid resolution");
    sub->add_option("--samples", cfg.samples, "sample count");
    sub->add_option("--steps", cfg.steps, "orbit steps");
    sub->add_option("--tol", cfg.tol, "convergence tolerance");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--t-list", cfg.t_list, "t values descending to 0")->delimiter(',');
    sub->add_option("--t-min", cfg.t_min, "lower t of the scan");
    sub->add_option("--t-max", cfg.t_max, "upper t of the scan");
    sub->add_option("--a-min", cfg.a_min, "lower a of the scan");
    sub->add_option("--a-max", cfg.a_max, "upper a of the scan; half width for connectivity-scan");
    sub->add_option("--out", cfg.out, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto* sub = app.get_subcommands().front();
    if (!config_path.empty()) {
      hlab::RunConfig file = hlab::RunConfig::load(config_path);
      // command-line flags win over the file
      for (auto* opt : sub->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--config" || opt->get_name() == "--help") continue;
        std::string key = opt->get_name().substr(2);
        for (auto& ch : key)
          if (ch == '-') ch = '_';
        std::string value;
        for (auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
        file = hlab::RunConfig::parse(file.serialize() + key + "=" + value + "\n");
      }
      cfg = file;
    }
    cfg.subcommand = sub->get_name();
    for (auto& path : hlab::run(cfg, std::cout)) std::cout << "wrote " << path << '\n';
  } catch (const hlab::precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const hlab::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
