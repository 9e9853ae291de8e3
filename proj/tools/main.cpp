// Command-line front end: JSON in, JSON/TSV reports out.
// Exit codes: 0 success, 2 validation error, 3 non-convergence or
// compute failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigendist/concentration.hpp"
#include "eigendist/coupling.hpp"
#include "eigendist/eigendistance.hpp"
#include "eigendist/errors.hpp"
#include "eigendist/generators.hpp"
#include "eigendist/json_io.hpp"
#include "eigendist/structure.hpp"

using nlohmann::json;
using namespace eigendist;

namespace {

struct RunConfig {
  std::string chain_path, metric_path, out_path;
  double p = 1.0;
  double tol = 0.0;  // overrides fp_tol when > 0
  int max_iter = 0;
  uint64_t seed = 1;
  int samples = 10000;
  std::string format = "json";
};

Tolerances make_tolerances(const RunConfig& cfg) {
  Tolerances tol;
  if (cfg.tol > 0.0) tol.fp_tol = cfg.tol;
  if (cfg.max_iter > 0) tol.max_iter = cfg.max_iter;
  return tol;
}

json base_report(const RunConfig& cfg, const Tolerances& tol) {
  json inputs = json::object();
  if (!cfg.chain_path.empty()) inputs["chain"] = fnv1a_hex(read_file(cfg.chain_path));
  if (!cfg.metric_path.empty()) inputs["metric"] = fnv1a_hex(read_file(cfg.metric_path));
  return json{{"schema_version", report_schema_version()},
              {"inputs", inputs},
              {"tolerances", tolerances_to_json(tol)}};
}

void emit(const RunConfig& cfg, const json& report) {
  std::string body;
  if (cfg.format == "tsv") {
    std::ostringstream os;
    for (auto it = report.begin(); it != report.end(); ++it)
      os << it.key() << "\t" << it.value().dump() << "\n";
    body = os.str();
  } else {
    body = report.dump(2) + "\n";
  }
  if (cfg.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write output file: " + cfg.out_path);
    out << body;
  }
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool chain, bool metric) {
  if (chain) cmd->add_option("--chain", cfg.chain_path, "chain JSON path")->required();
  if (metric) cmd->add_option("--metric", cfg.metric_path, "metric JSON path");
  cmd->add_option("--p", cfg.p, "Wasserstein exponent, >= 1");
  cmd->add_option("--tol", cfg.tol, "fixed-point tolerance override");
  cmd->add_option("--max-iter", cfg.max_iter, "iteration cap override");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--samples", cfg.samples, "Monte Carlo sample count");
  cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
  cmd->add_option("--format", cfg.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
}

int run_eigendist(const RunConfig& cfg) {
  Tolerances tol = make_tolerances(cfg);
  MarkovChain chain = load_chain(cfg.chain_path);
  PseudoMetric init =
      cfg.metric_path.empty() ? indicator_metric(chain.n) : load_metric(cfg.metric_path, tol);
  EigendistanceResult res = iterate_F(chain, cfg.p, init, tol);
  json report = base_report(cfg, tol);
  report["result"] = eigendistance_to_json(res);
  emit(cfg, report);
  return res.converged ? 0 : 3;
}

int run_maximal(const RunConfig& cfg) {
  Tolerances tol = make_tolerances(cfg);
  MarkovChain chain = load_chain(cfg.chain_path);
  EigendistanceResult res = iterate_maximal(chain, cfg.p, tol);
  json report = base_report(cfg, tol);
  report["result"] = eigendistance_to_json(res);
  emit(cfg, report);
  return res.converged ? 0 : 3;
}

int run_verify(const RunConfig& cfg) {
  Tolerances tol = make_tolerances(cfg);
  MarkovChain chain = load_chain(cfg.chain_path);
  PseudoMetric rho = load_metric(cfg.metric_path, tol);
  VerifyResult vr = verify_eigendistance(chain, rho, cfg.p, tol);
  json report = base_report(cfg, tol);
  report["kappa"] = vr.kappa_hat;
  report["residual"] = vr.residual;
  emit(cfg, report);
  return 0;
}

int run_coupling(const RunConfig& cfg) {
  Tolerances tol = make_tolerances(cfg);
  MarkovChain chain = load_chain(cfg.chain_path);
  PseudoMetric rho = load_metric(cfg.metric_path, tol);
  VerifyResult vr = verify_eigendistance(chain, rho, cfg.p, tol);
  EigendistanceResult eig;
  eig.rho = rho;
  eig.kappa = vr.kappa_hat;
  eig.residual = vr.residual;
  eig.p = cfg.p;
  eig.converged = true;
  WpResult wp = apply_W(chain, rho, cfg.p, true, tol);
  CouplingOperator sym = symmetrize(extract_coupling(chain, eig, wp, tol));
  IrreducibilityReport irr = coupling_irreducible(sym);
  json report = base_report(cfg, tol);
  report["kappa"] = vr.kappa_hat;
  report["irreducible"] = irr.irreducible;
  report["class_count"] = irr.classes.size();
  report["coupling"] = coupling_to_json(sym);
  emit(cfg, report);
  return 0;
}

int run_lumpable(const RunConfig& cfg) {
  Tolerances tol = make_tolerances(cfg);
  MarkovChain chain = load_chain(cfg.chain_path);
  LumpableSearch search = find_lumpable_partition(chain, chain.n <= 12);
  json report = base_report(cfg, tol);
  report["certified_irreducible"] = !search.partition && search.certified;
  if (search.partition)
    report["partition"] = partition_to_json(*search.partition);
  else
    report["partition"] = nullptr;
  emit(cfg, report);
  return 0;
}

int run_quotient(const RunConfig& cfg, const std::string& partition_path) {
  Tolerances tol = make_tolerances(cfg);
  MarkovChain chain = load_chain(cfg.chain_path);
  Partition part = load_partition(partition_path);
  MarkovChain quotient = quotient_chain(chain, part);
  json report = base_report(cfg, tol);
  report["quotient"] = chain_to_json(quotient);
  emit(cfg, report);
  return 0;
}

int run_concentration(const RunConfig& cfg, int T, int x0) {
  Tolerances tol = make_tolerances(cfg);
  MarkovChain chain = load_chain(cfg.chain_path);
  PseudoMetric rho = load_metric(cfg.metric_path, tol);
  VerifyResult vr = verify_eigendistance(chain, rho, 1.0, tol);
  double J = jump_bound(chain, rho);
  Vec sigma = sigma_moments(chain, rho, 20);

  json report = base_report(cfg, tol);
  report["kappa"] = vr.kappa_hat;
  report["J"] = J;
  report["sigma"] = Vec(sigma.begin() + 2, sigma.end());

  if (cfg.samples > 0) {
    // f = rho(x0, .) is 1-Lipschitz and saturates the norm.
    Vec f(chain.n);
    for (int z = 0; z < chain.n; ++z) f[z] = rho.d(x0, z);
    Vec grid;
    for (double r = 0.5; r <= 5.0 + 1e-12; r += 0.5) grid.push_back(r);
    TailReport tail =
        simulate_function_tail(chain, f, rho, vr.kappa_hat, x0, T, cfg.samples, cfg.seed, grid);
    report["tail"] = tail_report_to_json(tail);
  }
  emit(cfg, report);
  return 0;
}

int run_example(const RunConfig& cfg, const std::string& family, int L, double q, int n, int N,
                const std::vector<double>& weights) {
  Tolerances tol = make_tolerances(cfg);
  json report = base_report(cfg, tol);
  if (family == "torus") {
    report["chain"] = chain_to_json(gen::lazy_torus(L, q));
    if (L >= 4) {
      report["metric"] = metric_to_json(gen::rho_L(L));
      report["kappa"] = gen::kappa_L(L, 1.0 - 2.0 * q);
    }
    if (L % 2 == 0) {
      report["parity_metric"] = metric_to_json(gen::parity_metric(L));
      report["parity_kappa"] = gen::kappa_parity(q, 1.0 - 2.0 * q);
    }
  } else if (family == "spin") {
    report["chain"] = chain_to_json(gen::spin_flip(n, q));
    Vec a = weights.empty() ? Vec(n, 1.0) : weights;
    report["metric"] = metric_to_json(gen::weighted_hamming(a));
    report["kappa"] = 2.0 * q;
  } else if (family == "ruin") {
    MarkovChain chain = gen::gamblers_ruin(N, q);
    report["chain"] = chain_to_json(chain);
    report["harmonic_h"] = gen::harmonic_h(chain, {0}, {N});
  } else if (family == "random") {
    report["chain"] = chain_to_json(gen::random_lazy_chain(n, cfg.seed, 0.6));
  } else if (family == "product") {
    MarkovChain a = gen::lazy_torus(L, q);
    report["chain"] = chain_to_json(product_chain(a, a));
  } else {
    throw ValidationError("unknown example family: " + family);
  }
  emit(cfg, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-Wasserstein eigendistances of finite Markov chains"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* c_eigen = app.add_subcommand("eigendist", "normalized fixed-point iteration");
  add_common(c_eigen, cfg, true, true);
  auto* c_max = app.add_subcommand("maximal", "monotone iteration from the indicator metric");
  add_common(c_max, cfg, true, false);
  auto* c_verify = app.add_subcommand("verify", "curvature and residual of a candidate metric");
  add_common(c_verify, cfg, true, true);
  c_verify->get_option("--metric")->required();
  auto* c_coupling = app.add_subcommand("coupling", "extract + symmetrize + irreducibility report");
  add_common(c_coupling, cfg, true, true);
  c_coupling->get_option("--metric")->required();
  auto* c_lump = app.add_subcommand("lumpable", "search for a nontrivial lumpable partition");
  add_common(c_lump, cfg, true, false);
  std::string partition_path;
  auto* c_quot = app.add_subcommand("quotient", "quotient chain of a lumpable partition");
  add_common(c_quot, cfg, true, false);
  c_quot->add_option("--partition", partition_path, "partition JSON path")->required();
  int T = 10, x0 = 0;
  auto* c_conc = app.add_subcommand("concentration", "moment quantities, bounds, MC tail report");
  add_common(c_conc, cfg, true, true);
  c_conc->get_option("--metric")->required();
  c_conc->add_option("--T", T, "time horizon");
  c_conc->add_option("--x0", x0, "start state");
  std::string family;
  int L = 7, nspins = 2, Nruin = 5;
  double q = 0.2;
  std::vector<double> weights;
  auto* c_ex = app.add_subcommand("example", "emit a generated chain/metric family");
  c_ex->add_option("family", family, "torus | spin | ruin | random | product")->required();
  c_ex->add_option("--L", L, "torus size");
  c_ex->add_option("--q", q, "jump/flip probability");
  c_ex->add_option("--n", nspins, "spin count / random chain size");
  c_ex->add_option("--N", Nruin, "ruin endpoint");
  c_ex->add_option("--weights", weights, "weighted Hamming weights");
  add_common(c_ex, cfg, false, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_eigen->parsed()) return run_eigendist(cfg);
    if (c_max->parsed()) return run_maximal(cfg);
    if (c_verify->parsed()) return run_verify(cfg);
    if (c_coupling->parsed()) return run_coupling(cfg);
    if (c_lump->parsed()) return run_lumpable(cfg);
    if (c_quot->parsed()) return run_quotient(cfg, partition_path);
    if (c_conc->parsed()) return run_concentration(cfg, T, x0);
    if (c_ex->parsed()) return run_example(cfg, family, L, q, nspins, Nruin, weights);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ComputeError& e) {
    std::cerr << "compute error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input parse error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
