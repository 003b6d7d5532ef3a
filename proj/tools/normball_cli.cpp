// Command-line harness for the normball shared library: exact projections
// onto the intersection of the l1 and l1,q norm balls, Monte Carlo region
// tallies, baseline benchmarks and the constrained-regression experiment.
//
// Exit codes: 0 success, 2 bad input (files, sizes, radii, flags),
// 3 nonconvergence.

#include <chrono>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normball/normball.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNonconvergence = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += fmt(values[i]);
  }
  out += "]";
  return out;
}

const char* region_name(nb_region r) {
  switch (r) {
    case NB_REGION_INSIDE: return "INSIDE";
    case NB_REGION_I: return "REGION_I";
    case NB_REGION_II: return "REGION_II";
    case NB_REGION_III: return "REGION_III";
    case NB_REGION_ORIGIN: return "ORIGIN";
  }
  return "UNKNOWN";
}

int exit_code_for(nb_status st) {
  return st == NB_ERR_NONCONVERGENCE ? kExitNonconvergence : kExitInput;
}

int report_error(nb_status st) {
  std::cerr << "error: " << nb_last_error() << "\n";
  return exit_code_for(st);
}

// One decimal value per line.
bool read_vector_file(const std::string& path, std::vector<double>& out) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open vector file '" << path << "'\n";
    return false;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double v = 0.0;
    if (!(ss >> v) || !std::isfinite(v)) {
      std::cerr << "error: malformed value at " << path << ":" << lineno
                << "\n";
      return false;
    }
    std::string rest;
    if (ss >> rest) {
      std::cerr << "error: trailing junk at " << path << ":" << lineno << "\n";
      return false;
    }
    out.push_back(v);
  }
  if (out.empty()) {
    std::cerr << "error: vector file '" << path << "' is empty\n";
    return false;
  }
  return true;
}

// One positive integer group size per line.
bool read_groups_file(const std::string& path, std::vector<std::size_t>& out) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open groups file '" << path << "'\n";
    return false;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    long long v = 0;
    std::string rest;
    if (!(ss >> v) || v <= 0 || (ss >> rest)) {
      std::cerr << "error: malformed group size at " << path << ":" << lineno
                << "\n";
      return false;
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) {
    std::cerr << "error: groups file '" << path << "' is empty\n";
    return false;
  }
  return true;
}

bool parse_q(const std::string& s, nb_qnorm& q) {
  if (s == "2") {
    q = NB_Q2;
    return true;
  }
  if (s == "inf") {
    q = NB_QINF;
    return true;
  }
  std::cerr << "error: --q must be 2 or inf\n";
  return false;
}

struct Stats {
  double mean = 0.0;
  double sd = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

// ---- project ------------------------------------------------------------

int run_project(const std::string& q_str, double tau1, double tau2,
                const std::string& input, const std::string& groups_path,
                double eps_interval, double eps_residual,
                const std::string& out_format) {
  nb_qnorm q;
  if (!parse_q(q_str, q)) return kExitInput;

  std::vector<double> values;
  std::vector<std::size_t> sizes;
  if (!read_vector_file(input, values)) return kExitInput;
  if (!read_groups_file(groups_path, sizes)) return kExitInput;

  nb_vector* vec = nullptr;
  nb_status st =
      nb_vector_create(values.data(), values.size(), sizes.data(),
                       sizes.size(), &vec);
  if (st != NB_OK) return report_error(st);

  nb_result* res = nullptr;
  st = nb_project(vec, q, tau1, tau2, eps_interval, eps_residual, &res);
  if (st != NB_OK) {
    nb_vector_destroy(vec);
    return report_error(st);
  }

  std::vector<double> x(nb_result_dim(res));
  nb_result_x(res, x.data(), x.size());
  std::vector<double> caps;
  if (nb_result_has_caps(res)) {
    caps.resize(sizes.size());
    nb_result_caps(res, caps.data(), caps.size());
  }

  if (out_format == "json") {
    std::string json = "{";
    json += "\"x\":" + json_array(x);
    json += ",\"lambda1\":" + fmt(nb_result_lambda1(res));
    json += ",\"lambda2\":" + fmt(nb_result_lambda2(res));
    json += ",\"region\":\"" + std::string(region_name(nb_result_region(res))) +
            "\"";
    json += ",\"iterations\":" + std::to_string(nb_result_iterations(res));
    json += ",\"residual\":" + fmt(nb_result_residual(res));
    if (!caps.empty()) json += ",\"d\":" + json_array(caps);
    json += "}";
    std::cout << json << "\n";
  } else {
    std::cout << "field,value\n";
    std::cout << "lambda1," << fmt(nb_result_lambda1(res)) << "\n";
    std::cout << "lambda2," << fmt(nb_result_lambda2(res)) << "\n";
    std::cout << "region," << region_name(nb_result_region(res)) << "\n";
    std::cout << "iterations," << nb_result_iterations(res) << "\n";
    std::cout << "residual," << fmt(nb_result_residual(res)) << "\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::cout << "x[" << i << "]," << fmt(x[i]) << "\n";
    }
    for (std::size_t i = 0; i < caps.size(); ++i) {
      std::cout << "d[" << i << "]," << fmt(caps[i]) << "\n";
    }
  }

  nb_result_destroy(res);
  nb_vector_destroy(vec);
  return kExitOk;
}

// ---- regions ------------------------------------------------------------

int run_regions(const std::string& q_str, std::size_t g, std::size_t n,
                double tau1, double tau2, std::size_t samples,
                std::uint64_t seed, const std::string& out_format) {
  nb_qnorm q;
  if (!parse_q(q_str, q)) return kExitInput;

  size_t counts[4] = {0, 0, 0, 0};
  const nb_status st = nb_region_tally(q, g, n, tau1, tau2, -1000.0, 1000.0,
                                       samples, seed, counts);
  if (st != NB_OK) return report_error(st);

  const double total = static_cast<double>(samples);
  const char* keys[4] = {"inside", "region_i", "region_ii", "region_iii"};
  if (out_format == "json") {
    std::string json = "{";
    json += "\"q\":\"" + q_str + "\"";
    json += ",\"g\":" + std::to_string(g) + ",\"n\":" + std::to_string(n);
    json += ",\"tau1\":" + fmt(tau1) + ",\"tau2\":" + fmt(tau2);
    json += ",\"samples\":" + std::to_string(samples);
    json += ",\"seed\":" + std::to_string(seed);
    json += ",\"counts\":{";
    for (int i = 0; i < 4; ++i) {
      if (i) json += ",";
      json += "\"" + std::string(keys[i]) + "\":" + std::to_string(counts[i]);
    }
    json += "},\"fractions\":{";
    for (int i = 0; i < 4; ++i) {
      if (i) json += ",";
      json += "\"" + std::string(keys[i]) +
              "\":" + fmt(static_cast<double>(counts[i]) / total);
    }
    json += "}}";
    std::cout << json << "\n";
  } else {
    std::cout << "region,count,fraction\n";
    for (int i = 0; i < 4; ++i) {
      std::cout << keys[i] << "," << counts[i] << ","
                << fmt(static_cast<double>(counts[i]) / total) << "\n";
    }
  }
  return kExitOk;
}

// ---- bench --------------------------------------------------------------

int run_bench(const std::string& methods_csv, const std::string& q_str,
              std::size_t g, std::size_t n, double tau1, double tau2,
              std::size_t trials, std::uint64_t seed) {
  nb_qnorm q;
  if (!parse_q(q_str, q)) return kExitInput;
  if (trials < 1) {
    std::cerr << "error: --trials must be >= 1\n";
    return kExitInput;
  }
  if (tau1 <= 0.0) tau1 = 5.0;
  if (tau2 <= 0.0) tau2 = q == NB_Q2 ? 6.0 : 10.0;

  std::vector<std::string> methods;
  {
    std::stringstream ss(methods_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok != "bisect" && tok != "dykstra" && tok != "admm") {
        std::cerr << "error: unknown method '" << tok << "'\n";
        return kExitInput;
      }
      methods.push_back(tok);
    }
  }
  if (methods.empty()) {
    std::cerr << "error: no methods given\n";
    return kExitInput;
  }

  // Draw region-III instances: with the default radii and +-1e3 uniform
  // coordinates nearly every sample qualifies, but resampling is bounded
  // anyway.
  nb_rng* rng = nullptr;
  nb_rng_create(seed, &rng);
  std::vector<nb_vector*> instances;
  std::vector<double> buf(n);
  std::vector<std::size_t> sizes(g, n / g);
  for (std::size_t i = 0; i < n % g; ++i) ++sizes[i];
  std::size_t attempts = 0;
  while (instances.size() < trials && attempts < 1000 * trials + 1000) {
    ++attempts;
    nb_rng_uniform(rng, -1000.0, 1000.0, buf.data(), buf.size());
    nb_vector* vec = nullptr;
    if (nb_vector_create(buf.data(), buf.size(), sizes.data(), sizes.size(),
                         &vec) != NB_OK) {
      break;
    }
    nb_region region;
    if (nb_classify(vec, q, tau1, tau2, &region) != NB_OK) {
      nb_vector_destroy(vec);
      break;
    }
    if (region == NB_REGION_III) {
      instances.push_back(vec);
    } else {
      nb_vector_destroy(vec);
    }
  }
  nb_rng_destroy(rng);
  if (instances.size() < trials) {
    std::cerr << "error: could not sample enough region-III instances\n";
    for (auto* v : instances) nb_vector_destroy(v);
    return kExitInput;
  }

  std::cout << "method,g,n,q,trials,mean_ms,sd_ms,iters_mean,iters_sd\n";

  for (const std::string& method : methods) {
    std::vector<double> ms;
    std::vector<double> iters;
    for (nb_vector* vec : instances) {
      nb_result* res = nullptr;
      const auto t0 = std::chrono::steady_clock::now();
      nb_status st = NB_OK;
      if (method == "bisect") {
        st = nb_project(vec, q, tau1, tau2, 0.0, 0.0, &res);
      } else if (method == "dykstra") {
        st = nb_dykstra(vec, q, tau1, tau2, 1, 1e-9, 1000000, &res);
      } else {
        st = nb_admm(vec, q, tau1, tau2, 1.0, 1e-8, 100000, &res);
      }
      const auto t1 = std::chrono::steady_clock::now();
      if (st != NB_OK) {
        for (auto* v : instances) nb_vector_destroy(v);
        return report_error(st);
      }
      if (!nb_result_converged(res)) {
        std::cerr << "warning: " << method
                  << " hit its iteration cap on one trial\n";
      }
      ms.push_back(
          std::chrono::duration<double, std::milli>(t1 - t0).count());
      iters.push_back(static_cast<double>(nb_result_iterations(res)));
      nb_result_destroy(res);
    }
    const Stats tm = stats_of(ms);
    const Stats it = stats_of(iters);
    std::cout << method << "," << g << "," << n << "," << q_str << ","
              << trials << "," << fmt(tm.mean) << "," << fmt(tm.sd) << ","
              << fmt(it.mean) << "," << fmt(it.sd) << "\n";
  }
  for (auto* v : instances) nb_vector_destroy(v);
  return kExitOk;
}

// ---- regress ------------------------------------------------------------

int run_regress(const std::string& size_str, const std::string& solver_str,
                const std::string& q_str, std::uint64_t seed, double tol,
                long max_iters) {
  nb_qnorm q;
  if (!parse_q(q_str, q)) return kExitInput;
  nb_problem_size size;
  if (size_str == "small") {
    size = NB_SIZE_SMALL;
  } else if (size_str == "medium") {
    size = NB_SIZE_MEDIUM;
  } else {
    std::cerr << "error: --size must be small or medium\n";
    return kExitInput;
  }
  nb_solver solver;
  if (solver_str == "pg") {
    solver = NB_SOLVER_PG;
  } else if (solver_str == "nesterov") {
    solver = NB_SOLVER_NESTEROV;
  } else {
    std::cerr << "error: --solver must be pg or nesterov\n";
    return kExitInput;
  }

  nb_regression* prob = nullptr;
  nb_status st = nb_regression_create(size, q, seed, &prob);
  if (st != NB_OK) return report_error(st);

  nb_trace* trace = nullptr;
  st = nb_regression_solve(prob, solver, tol, max_iters, &trace);
  if (st != NB_OK) {
    nb_regression_destroy(prob);
    return report_error(st);
  }

  const std::size_t n = nb_regression_dim(prob);
  std::vector<double> w(n), true_w(n);
  nb_trace_w(trace, w.data(), n);
  nb_regression_true_w(prob, true_w.data(), n);

  // Share of the recovered l1 mass that sits on the true support.
  double mass = 0.0;
  double mass_on_support = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mass += std::abs(w[i]);
    if (true_w[i] != 0.0) mass_on_support += std::abs(w[i]);
  }
  const double support_mass = mass > 0.0 ? mass_on_support / mass : 0.0;

  std::string json = "{";
  json += "\"size\":\"" + size_str + "\",\"solver\":\"" + solver_str + "\"";
  json += ",\"q\":\"" + q_str + "\",\"seed\":" + std::to_string(seed);
  json += ",\"tol\":" + fmt(tol);
  json += ",\"n\":" + std::to_string(n);
  json += ",\"observations\":" + std::to_string(nb_regression_observations(prob));
  json += ",\"tau1\":" + fmt(nb_regression_tau1(prob));
  json += ",\"tau2\":" + fmt(nb_regression_tau2(prob));
  json += ",\"iterations\":" + std::to_string(nb_trace_iterations(trace));
  json += ",\"converged\":" +
          std::string(nb_trace_converged(trace) ? "true" : "false");
  json += ",\"step_size\":" + fmt(nb_trace_step_size(trace));
  json += ",\"final_objective\":" + fmt(nb_trace_final_objective(trace));
  json += ",\"feas_violation_l1q\":" + fmt(nb_trace_max_violation_l1q(trace));
  json += ",\"feas_violation_l1\":" + fmt(nb_trace_max_violation_l1(trace));
  json += ",\"support_mass\":" + fmt(support_mass);
  json += "}";
  std::cout << json << "\n";

  nb_trace_destroy(trace);
  nb_regression_destroy(prob);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{"Euclidean projections onto the intersection of the l1 and "
               "l1,q norm balls"};
  app.require_subcommand(1);

  // project
  std::string q_str = "2";
  double tau1 = 0.0, tau2 = 0.0;
  std::string input, groups_path, out_format = "json";
  double eps_interval = 0.0, eps_residual = 0.0;
  auto* project = app.add_subcommand("project",
                                     "project a vector read from files");
  project->add_option("--q", q_str, "norm family: 2 or inf");
  project->add_option("--tau1", tau1, "l1,q ball radius")->required();
  project->add_option("--tau2", tau2, "l1 ball radius")->required();
  project->add_option("--input", input, "vector file, one value per line")
      ->required();
  project->add_option("--groups", groups_path,
                      "group sizes file, one positive integer per line")
      ->required();
  project->add_option("--eps-interval", eps_interval,
                      "bisection interval stop (default scale-relative)");
  project->add_option("--eps-residual", eps_residual,
                      "bisection residual stop (default scale-relative)");
  project->add_option("--out", out_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // regions
  std::size_t g = 10, n = 100, samples = 10000;
  std::uint64_t seed = 1;
  double rg_tau1 = 5.0, rg_tau2 = 6.0;
  std::string rg_q = "2", rg_out = "json";
  auto* regions = app.add_subcommand(
      "regions", "Monte Carlo region tally over uniform samples");
  regions->add_option("--g", g, "number of groups");
  regions->add_option("--n", n, "dimension");
  regions->add_option("--q", rg_q, "norm family: 2 or inf");
  regions->add_option("--tau1", rg_tau1, "l1,q ball radius");
  regions->add_option("--tau2", rg_tau2, "l1 ball radius");
  regions->add_option("--samples", samples, "number of samples");
  regions->add_option("--seed", seed, "rng seed");
  regions->add_option("--out", rg_out, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // bench
  std::string methods = "bisect,dykstra,admm";
  std::size_t b_g = 10, b_n = 100, trials = 10;
  std::uint64_t b_seed = 1;
  std::string b_q = "2";
  double b_tau1 = 0.0, b_tau2 = 0.0;
  auto* bench = app.add_subcommand(
      "bench", "time the projection methods on region-III instances");
  bench->add_option("--methods", methods,
                    "comma list from bisect,dykstra,admm");
  bench->add_option("--g", b_g, "number of groups");
  bench->add_option("--n", b_n, "dimension");
  bench->add_option("--q", b_q, "norm family: 2 or inf");
  bench->add_option("--tau1", b_tau1, "l1,q radius (default 5)");
  bench->add_option("--tau2", b_tau2, "l1 radius (default 6 for q=2, 10 for inf)");
  bench->add_option("--trials", trials, "trials per method");
  bench->add_option("--seed", b_seed, "rng seed");

  // regress
  std::string size_str = "small", solver_str = "pg", rq = "2";
  std::uint64_t r_seed = 1;
  double r_tol = 1e-8;
  long r_max_iters = 200000;
  auto* regress = app.add_subcommand(
      "regress", "constrained least squares on synthetic data");
  regress->add_option("--size", size_str, "small or medium");
  regress->add_option("--solver", solver_str, "pg or nesterov");
  regress->add_option("--q", rq, "norm family: 2 or inf");
  regress->add_option("--seed", r_seed, "rng seed");
  regress->add_option("--tol", r_tol, "step-norm stopping tolerance");
  regress->add_option("--max-iters", r_max_iters, "iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (project->parsed()) {
    return run_project(q_str, tau1, tau2, input, groups_path, eps_interval,
                       eps_residual, out_format);
  }
  if (regions->parsed()) {
    return run_regions(rg_q, g, n, rg_tau1, rg_tau2, samples, seed, rg_out);
  }
  if (bench->parsed()) {
    return run_bench(methods, b_q, b_g, b_n, b_tau1, b_tau2, trials, b_seed);
  }
  if (regress->parsed()) {
    return run_regress(size_str, solver_str, rq, r_seed, r_tol, r_max_iters);
  }
  return kExitInput;
}
