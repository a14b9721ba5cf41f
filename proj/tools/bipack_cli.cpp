// bipack: command-line front end.
//
// Exit codes: 0 success / applies, 1 failure / does not apply,
// 2 usage or input error, 3 search budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bipack/bipack.hpp"

using namespace bipack;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

BipartiteGraph graph_arg(const std::string& path) {
  if (path == "-") return read_graph(std::cin);
  return load_graph(path);
}

BigraphicSequence sequence_arg(const std::string& path) {
  if (path == "-") return read_sequence(std::cin);
  return load_sequence(path);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

template <class T>
std::vector<T> parse_list(const std::string& text, auto convert) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(convert(item));
  return out;
}

std::vector<int> int_list(const std::string& text) {
  return parse_list<int>(text, [](const std::string& s) { return std::stoi(s); });
}

// Options shared by the embed and experiment subcommands.
struct EmbedOptions {
  std::string eps = "1/10";
  std::string mode = "relaxed";
  std::string cap;
  std::string log_base;
  int retries = 5;
  std::optional<std::int64_t> small_class_limit;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eps", eps, "epsilon in (0, 1/2), e.g. 0.1 or 1/10")->capture_default_str();
    cmd->add_option("--mode", mode, "strict or relaxed")->check(CLI::IsMember({"strict", "relaxed"}))->capture_default_str();
    cmd->add_option("--cap", cap, "relaxed mode degree cap (default: largest S-degree)");
    cmd->add_option("--retries", retries, "re-randomizations after a failure")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--log-base", log_base, "log base for thresholds (default: natural log)");
    cmd->add_option("--small-class-limit", small_class_limit, "relaxed mode: bands of at most this size are handled greedily");
  }

  [[nodiscard]] LogBase base() const { return log_base.empty() ? LogBase{} : LogBase{Rational::parse(log_base)}; }

  [[nodiscard]] EmbedConfig config(std::uint64_t seed) const {
    EmbedConfig cfg;
    cfg.eps = Rational::parse(eps);
    cfg.mode = mode == "strict" ? EmbedMode::Strict : EmbedMode::Relaxed;
    if (!cap.empty()) cfg.cap_override = Rational::parse(cap);
    cfg.retries = retries;
    cfg.seed = seed;
    cfg.log_base = base();
    cfg.small_class_limit = small_class_limit;
    cfg.validate();
    return cfg;
  }
};

int verdict_code(Verdict v) { return v == Verdict::Applies ? kOk : kNo; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite packing and embedding toolkit"};
  app.require_subcommand(1);
  std::string out_path;
  std::uint64_t seed = 0;

  // check-sequence
  auto* check_seq = app.add_subcommand("check-sequence", "Gale-Ryser / Havel-Hakimi / Kundu checks");
  std::string seq_path, graphic_list;
  std::optional<int> kundu_k;
  bool realize = false;
  check_seq->add_option("sequence", seq_path, "bigraphic sequence file ('-' for stdin)");
  check_seq->add_option("--graphic", graphic_list, "comma-separated graphic sequence instead of a file");
  check_seq->add_option("--kundu", kundu_k, "with --graphic: test for a realization containing a k-factor");
  check_seq->add_flag("--realize", realize, "print a realization of a bigraphic sequence");
  check_seq->add_option("--out", out_path, "output file (default stdout)");

  // check-conditions
  auto* check_cond = app.add_subcommand("check-conditions", "Evaluate the packing theorems' hypotheses");
  std::string seq1_path, seq2_path, host_path, target_path;
  EmbedOptions eo;
  check_cond->add_option("--seq1", seq1_path, "first sequence (sparse side)");
  check_cond->add_option("--seq2", seq2_path, "second sequence");
  check_cond->add_option("--host", host_path, "host graph (dense-host theorem)");
  check_cond->add_option("--target", target_path, "target star forest (dense-host theorem)");
  check_cond->add_option("--eps", eo.eps, "epsilon in (0, 1/2)")->capture_default_str();
  check_cond->add_option("--log-base", eo.log_base, "log base (default natural)");
  check_cond->add_option("--out", out_path, "output file (default stdout)");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Randomized star-forest embedding, or a fixed-order embedding with --demand");
  std::string demand_path;
  bool cut_check = false;
  embed_cmd->add_option("--host", host_path, "host graph")->required();
  embed_cmd->add_option("--target", target_path, "target star forest");
  embed_cmd->add_option("--demand", demand_path, "positional degree demands (fixed-order mode)");
  embed_cmd->add_flag("--cut-check", cut_check, "with --demand: also report the most violated cut");
  embed_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  embed_cmd->add_option("--out", out_path, "output file (default stdout)");
  eo.attach(embed_cmd);

  // pack
  auto* pack_cmd = app.add_subcommand("pack", "Exhaustive packing decision for two small bigraphic sequences");
  OracleBudget budget;
  pack_cmd->add_option("--seq1", seq1_path, "first sequence")->required();
  pack_cmd->add_option("--seq2", seq2_path, "second sequence")->required();
  pack_cmd->add_option("--max-nodes", budget.max_nodes, "cap on m + n")->capture_default_str();
  pack_cmd->add_option("--node-limit", budget.node_limit, "search node budget")->capture_default_str();
  pack_cmd->add_option("--out", out_path, "output file (default stdout)");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive embedding search for small instances");
  oracle_cmd->add_option("--host", host_path, "host graph")->required();
  oracle_cmd->add_option("--target", target_path, "target graph")->required();
  oracle_cmd->add_option("--max-nodes", budget.max_nodes, "cap on host m + n")->capture_default_str();
  oracle_cmd->add_option("--node-limit", budget.node_limit, "search node budget")->capture_default_str();
  oracle_cmd->add_flag("--symmetry", budget.symmetry_pruning, "prune equal-degree hubs (star forests)");
  oracle_cmd->add_option("--out", out_path, "output file (default stdout)");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Graph generators");
  gen_cmd->require_subcommand(1);
  int gen_n = 0;
  double gen_p = 0.75, gen_c = 1.0;
  std::string hubs_list, target_out;
  auto* gen_random = gen_cmd->add_subcommand("random", "G(n, n, p)");
  gen_random->add_option("--n", gen_n, "class size")->required();
  gen_random->add_option("--p", gen_p, "edge probability")->capture_default_str();
  gen_random->add_option("--seed", seed, "random seed")->capture_default_str();
  gen_random->add_option("--out", out_path, "output file (default stdout)");
  auto* gen_star = gen_cmd->add_subcommand("star-forest", "Star forest with the given hub degrees");
  gen_star->add_option("--n", gen_n, "class size")->required();
  gen_star->add_option("--hubs", hubs_list, "comma-separated hub degrees");
  gen_star->add_option("--out", out_path, "output file (default stdout)");
  auto* gen_c1 = gen_cmd->add_subcommand("condition1", "Two unbalanced complete bipartite blocks (no perfect matching)");
  gen_c1->add_option("--n", gen_n, "even class size, at least 4")->required();
  gen_c1->add_option("--out", out_path, "output file (default stdout)");
  auto* gen_c2 = gen_cmd->add_subcommand("condition2", "Dense random host with a few very large hubs");
  gen_c2->add_option("--n", gen_n, "class size")->required();
  gen_c2->add_option("--c", gen_c, "hub constant")->capture_default_str();
  gen_c2->add_option("--p", gen_p, "edge probability, above 1/2");
  gen_c2->add_option("--seed", seed, "random seed")->capture_default_str();
  gen_c2->add_option("--log-base", eo.log_base, "log base (default natural)");
  gen_c2->add_option("--out", out_path, "host output file (default stdout)");
  gen_c2->add_option("--target-out", target_out, "target output file (default: after the host on stdout)");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo trials of the embedding pipeline");
  ExperimentSpec spec;
  std::string n_list = "64", p_list = "0.75", dh_list = "4", eps_list, generator = "random";
  exp_cmd->add_option("--trials", spec.trials, "trials per grid point")->capture_default_str();
  exp_cmd->add_option("--n", n_list, "comma-separated class sizes")->capture_default_str();
  exp_cmd->add_option("--p", p_list, "comma-separated edge probabilities")->capture_default_str();
  exp_cmd->add_option("--delta-h", dh_list, "comma-separated target hub degrees")->capture_default_str();
  exp_cmd->add_option("--eps-list", eps_list, "comma-separated epsilons (overrides --eps)");
  exp_cmd->add_option("--generator", generator, "random or condition1")
      ->check(CLI::IsMember({"random", "condition1"}))
      ->capture_default_str();
  exp_cmd->add_option("--leaf-fraction", spec.leaf_fraction, "target leaves as a fraction of n")->capture_default_str();
  exp_cmd->add_option("--min-degree", spec.min_degree_fraction, "resample hosts below this min-degree fraction")
      ->capture_default_str();
  exp_cmd->add_option("--jobs", spec.jobs, "worker threads")->capture_default_str();
  exp_cmd->add_option("--seed", seed, "seed base; trial i uses seed + i")->capture_default_str();
  exp_cmd->add_option("--out", out_path, "output directory for trials.csv, summary.csv, meta.json");
  eo.attach(exp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check_seq) {
      Json j;
      int code = kOk;
      if (!graphic_list.empty()) {
        const auto s = int_list(graphic_list);
        j["sequence"] = s;
        j["graphic"] = is_graphic(s);
        code = is_graphic(s) ? kOk : kNo;
        if (kundu_k) {
          const bool k = kundu_check(s, *kundu_k);
          j["kFactor"] = {{"k", *kundu_k}, {"holds", k}};
          code = k ? kOk : kNo;
        }
      } else {
        if (seq_path.empty()) throw UsageError("give a sequence file or --graphic");
        if (kundu_k) throw UsageError("--kundu needs --graphic");
        const auto s = sequence_arg(seq_path);
        j["sequence"] = to_json(s);
        j["bigraphic"] = is_bigraphic(s);
        code = is_bigraphic(s) ? kOk : kNo;
        if (realize && code == kOk) j["realization"] = format_graph(realize_bigraphic(s));
      }
      emit_json(j, out_path);
      return code;
    }

    if (*check_cond) {
      const Rational eps = Rational::parse(eo.eps);
      if (!seq1_path.empty() && !seq2_path.empty()) {
        const auto reports = compare_theorems(sequence_arg(seq1_path), sequence_arg(seq2_path), eps, eo.base());
        Json arr = Json::array();
        bool any = false;
        for (const auto& r : reports) {
          arr.push_back(to_json(r));
          any = any || r.applies();
        }
        emit_json(arr, out_path);
        return any ? kOk : kNo;
      }
      if (!host_path.empty() && !target_path.empty()) {
        const auto r = theorem1_conditions(graph_arg(host_path), graph_arg(target_path), eps, eo.base());
        emit_json(to_json(r), out_path);
        return verdict_code(r.verdict);
      }
      throw UsageError("give --seq1 and --seq2, or --host and --target");
    }

    if (*embed_cmd) {
      const auto host = graph_arg(host_path);
      if (!demand_path.empty()) {
        const auto demand = sequence_arg(demand_path);
        const auto r = fixed_order_embed(host, demand);
        Json j{{"feasible", static_cast<bool>(r)}, {"deficit", r.deficit}, {"edges", edges_json(r.edges)}};
        if (cut_check) {
          const auto v = lemma4_check_exhaustive(host, demand);
          j["violation"] = v ? to_json(*v) : Json(nullptr);
        }
        emit_json(j, out_path);
        return r ? kOk : kNo;
      }
      if (target_path.empty()) throw UsageError("embed needs --target or --demand");
      const auto out = embed(host, graph_arg(target_path), eo.config(seed));
      emit_json(to_json(out), out_path);
      return out.ok() ? kOk : kNo;
    }

    if (*pack_cmd) {
      const auto s1 = sequence_arg(seq1_path);
      const auto s2 = sequence_arg(seq2_path);
      const auto r = brute_force_pack(s1, s2, budget);
      Json j{{"status", to_string(r.status)}, {"nodes", r.nodes}};
      if (r.witness) j["witness"] = to_json(*r.witness);
      emit_json(j, out_path);
      return r.status == OracleStatus::Found ? kOk : r.status == OracleStatus::None ? kNo : kBudget;
    }

    if (*oracle_cmd) {
      const auto r = brute_force_embed(graph_arg(host_path), graph_arg(target_path), budget);
      Json j{{"status", to_string(r.status)}, {"nodes", r.nodes}};
      if (r.witness) j["witness"] = to_json(*r.witness);
      emit_json(j, out_path);
      return r.status == OracleStatus::Found ? kOk : r.status == OracleStatus::None ? kNo : kBudget;
    }

    if (*gen_cmd) {
      if (*gen_random) {
        Rng rng(seed);
        emit(format_graph(gen_random_bipartite(gen_n, gen_p, rng)), out_path);
      } else if (*gen_star) {
        emit(format_graph(gen_star_forest(gen_n, int_list(hubs_list))), out_path);
      } else if (*gen_c1) {
        emit(format_graph(gen_condition1_counterexample(gen_n)), out_path);
      } else {
        Rng rng(seed);
        const double p = gen_c2->count("--p") ? gen_p : 0.55;
        const auto [host, target] = gen_condition2_counterexample(gen_n, gen_c, rng, p, eo.base());
        if (target_out.empty()) {
          emit(format_graph(host) + format_graph(target), out_path);
        } else {
          emit(format_graph(host), out_path);
          emit(format_graph(target), target_out);
        }
      }
      return kOk;
    }

    if (*exp_cmd) {
      spec.n_values = int_list(n_list);
      spec.p_values = parse_list<double>(p_list, [](const std::string& s) { return std::stod(s); });
      spec.delta_h_values = int_list(dh_list);
      spec.eps_values = eps_list.empty() ? std::vector<Rational>{Rational::parse(eo.eps)}
                                         : parse_list<Rational>(eps_list, [](const std::string& s) { return Rational::parse(s); });
      spec.generator = generator == "random" ? HostGenerator::Random : HostGenerator::Condition1;
      const auto probe = eo.config(0);
      spec.mode = probe.mode;
      spec.cap_override = probe.cap_override;
      spec.small_class_limit = probe.small_class_limit;
      spec.retries = probe.retries;
      spec.seed_base = seed;
      spec.output_path = out_path;
      const auto result = run_experiment(spec);
      std::cout << summary_csv(result, spec);
      return kOk;
    }
  } catch (const SizeTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNo;
  }
  return kUsage;
}
