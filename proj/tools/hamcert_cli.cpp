#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hamcert/certify.hpp"
#include "hamcert/edge_list.hpp"
#include "hamcert/errors.hpp"
#include "hamcert/pseudorandom.hpp"
#include "hamcert/random_models.hpp"
#include "hamcert/report.hpp"

using namespace hamcert;
using nlohmann::json;

namespace {

enum class Algo { auto_, dcerham, rcerham, exact };

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_edge_list(in);
}

// "n,p,seed"
GenConfig parse_gnp(const std::string& spec) {
  std::stringstream ss(spec);
  std::string a, b, c;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c) || a.empty() ||
      b.empty() || c.empty())
    throw InputError("--gnp expects n,p,seed");
  try {
    std::size_t pos = 0;
    GenConfig g;
    g.n = std::stoull(a, &pos);
    if (pos != a.size()) throw InputError("bad n");
    g.p = std::stod(b, &pos);
    if (pos != b.size()) throw InputError("bad p");
    g.seed = std::stoull(c, &pos);
    if (pos != c.size()) throw InputError("bad seed");
    return g;
  } catch (const std::logic_error&) {
    throw InputError("--gnp expects n,p,seed");
  }
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw InputError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

void write_to(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Outcome run(Algo algo, const Graph& g, std::uint64_t seed, const SolveConfig& cfg) {
  QueryOracle oracle(g);
  switch (algo) {
    case Algo::dcerham: return dcer_ham(oracle, cfg);
    case Algo::rcerham: return rcer_ham(oracle, seed, cfg);
    case Algo::exact: return exact_route(oracle, cfg);
    case Algo::auto_: break;
  }
  return solve_auto(oracle, seed, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certifying Hamilton cycle solver"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Sample G(n,p) as an edge list");
  GenConfig gcfg;
  std::string gen_out;
  gen->add_option("--n", gcfg.n, "vertices")->required();
  gen->add_option("--p", gcfg.p, "edge probability")->required();
  gen->add_option("--seed", gcfg.seed, "seed")->required();
  gen->add_option("--out", gen_out, "output file (stdout when absent)");

  // hn
  auto* hn = app.add_subcommand("hn", "Build the pseudorandom mask graph H_n");
  std::size_t hn_n = 0;
  std::string hn_out, hn_recipe;
  hn->add_option("--n", hn_n, "vertices (>= 256)")->required();
  hn->add_option("--out", hn_out, "output edge list");
  hn->add_option("--recipe", hn_recipe, "write the construction recipe as JSON");

  // solve / certify
  auto* solve = app.add_subcommand("solve", "Decide Hamiltonicity with a certificate");
  auto* certify = app.add_subcommand("certify", "Deterministic solver (same as solve --algo dcerham)");
  std::string in_path, gnp_spec, algo_name = "auto", out_path;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultSparseBudget;
  bool as_json = false, with_trace = false;
  for (auto* cmd : {solve, certify}) {
    auto* in_opt = cmd->add_option("--in", in_path, "edge-list file");
    auto* gnp_opt = cmd->add_option("--gnp", gnp_spec, "sample G(n,p): n,p,seed");
    in_opt->excludes(gnp_opt);
    cmd->add_option("--seed", seed, "seed for the randomised mask");
    cmd->add_option("--budget", budget, "FindSparse enumeration budget");
    cmd->add_flag("--json", as_json, "print the JSON report");
    cmd->add_flag("--trace", with_trace, "include solver traces in the JSON");
    cmd->add_option("--out", out_path, "write the JSON report to a file");
  }
  solve->add_option("--algo", algo_name, "dcerham|rcerham|exact|auto")
      ->check(CLI::IsMember({"dcerham", "rcerham", "exact", "auto"}));

  // exact
  auto* exact = app.add_subcommand("exact", "Inclusion-exclusion solver on the whole graph");
  std::string exact_in;
  exact->add_option("--in", exact_in, "edge-list file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Re-check a solver result against a graph");
  std::string verify_in, verify_result;
  verify->add_option("--in", verify_in, "edge-list file")->required();
  verify->add_option("--result", verify_result, "JSON result from solve")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run G(n,p) instances and write per-run stats");
  std::string ns_s, ps_s, csv_path, bench_algo = "auto";
  std::size_t reps = 1;
  std::uint64_t bench_seed = 0;
  bench->add_option("--ns", ns_s, "comma-separated sizes")->required();
  bench->add_option("--ps", ps_s, "comma-separated probabilities")->required();
  bench->add_option("--reps", reps, "repetitions per (n,p)")->required();
  bench->add_option("--seed", bench_seed, "base seed")->required();
  bench->add_option("--csv", csv_path, "output CSV")->required();
  bench->add_option("--algo", bench_algo, "dcerham|rcerham|exact|auto")
      ->check(CLI::IsMember({"dcerham", "rcerham", "exact", "auto"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto algo_of = [](const std::string& s) {
    if (s == "dcerham") return Algo::dcerham;
    if (s == "rcerham") return Algo::rcerham;
    if (s == "exact") return Algo::exact;
    return Algo::auto_;
  };

  try {
    if (*gen) {
      std::ostringstream os;
      write_edge_list(os, gen_gnp(gcfg));
      write_to(gen_out, os.str());
    } else if (*hn) {
      auto h = build_hn(hn_n);
      std::ostringstream os;
      write_edge_list(os, h.graph);
      write_to(hn_out, os.str());
      if (!hn_recipe.empty()) write_to(hn_recipe, recipe_to_json(h.recipe).dump(2) + "\n");
    } else if (*solve || *certify || *exact) {
      Graph g;
      Algo algo = *certify ? Algo::dcerham : algo_of(algo_name);
      if (*exact) {
        g = load_graph(exact_in);
        algo = Algo::exact;
        as_json = true;
      } else if (!in_path.empty()) {
        g = load_graph(in_path);
      } else if (!gnp_spec.empty()) {
        g = gen_gnp(parse_gnp(gnp_spec));
      } else {
        throw InputError("give --in FILE or --gnp n,p,seed");
      }
      SolveConfig cfg;
      cfg.sparse_budget = budget;
      const auto t0 = std::chrono::steady_clock::now();
      Outcome o = run(algo, g, seed, cfg);
      const auto wall = std::chrono::duration_cast<std::chrono::nanoseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      json report = outcome_to_json(o, g.size(), with_trace);
      report["input"] = in_path.empty() ? (exact_in.empty() ? json{{"gnp", gnp_spec}}
                                                            : json{{"file", exact_in}})
                                        : json{{"file", in_path}};
      report["wall_nanos"] = wall;
      const std::string text = report.dump(as_json ? 2 : -1) + "\n";
      if (!out_path.empty()) write_to(out_path, text);
      if (as_json) {
        if (out_path.empty()) std::cout << text;
      } else {
        std::cout << report["verdict"].get<std::string>();
        if (o.certificate) std::cout << " (" << to_string(o.certificate->kind) << ")";
        std::cout << " regime=" << to_string(o.stats.regime) << " queries=" << o.stats.queries
                  << " count=" << o.stats.count << "\n";
      }
    } else if (*verify) {
      Graph g = load_graph(verify_in);
      std::ifstream rin(verify_result);
      if (!rin) throw InputError("cannot open " + verify_result);
      json j;
      try {
        j = json::parse(rin);
      } catch (const json::exception& e) {
        throw InputError(std::string("result is not valid JSON: ") + e.what());
      }
      Outcome o = outcome_from_json(j, g.size());
      const bool ok = verify_outcome(g, o);
      std::cout << (ok ? "accepted" : "rejected") << "\n";
      return ok ? 0 : 1;
    } else if (*bench) {
      const auto ns = parse_list<std::size_t>(ns_s);
      const auto ps = parse_list<double>(ps_s);
      std::ofstream csv(csv_path);
      if (!csv) throw InputError("cannot write " + csv_path);
      csv << "n,p,seed,verdict,queries,count,t,regime,fallback_used,t_a_nanos,t_b_nanos\n";
      for (auto n : ns)
        for (auto p : ps)
          for (std::size_t r = 0; r < reps; ++r) {
            const std::uint64_t s = bench_seed + r;
            Graph g = gen_gnp({n, p, s});
            std::string verdict = "budget_exceeded";
            Outcome o;
            try {
              o = run(algo_of(bench_algo), g, s, SolveConfig{});
              verdict = o.hamiltonian() ? "hamiltonian" : "not_hamiltonian";
              if (!verify_outcome(g, o)) verdict = "unverified";
            } catch (const BudgetExceeded&) {
            }
            csv << n << ',' << p << ',' << s << ',' << verdict << ',' << o.stats.queries << ','
                << o.stats.count << ',' << o.stats.t << ',' << to_string(o.stats.regime) << ','
                << (o.stats.fallback_used ? "true" : "false") << ',' << o.stats.t_a_nanos << ','
                << o.stats.t_b_nanos << '\n';
          }
      json env = {{"compiler", __VERSION__},
                  {"hardware_threads", std::thread::hardware_concurrency()},
                  {"cplusplus", __cplusplus}};
      std::ofstream(csv_path + ".env.json") << env.dump(2) << "\n";
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
