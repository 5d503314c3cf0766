#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sprank/augment.hpp"
#include "sprank/errors.hpp"
#include "sprank/io.hpp"
#include "sprank/oracle.hpp"
#include "sprank/resilience.hpp"

namespace sprank::cli {

namespace {

using Json = nlohmann::ordered_json;

Json edge_json(const Edge& e) { return Json::array({e.left + 1, e.right + 1}); }

Json edges_json(std::span<const Edge> edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back(edge_json(e));
  return out;
}

std::string edges_text(std::span<const Edge> edges) {
  if (edges.empty()) return "(none)";
  std::string out;
  for (const Edge& e : edges) {
    if (!out.empty()) out += ' ';
    out += to_string(e);
  }
  return out;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

io::PatternDocument load(const std::string& path, std::ostream& err) {
  const WarningSink warn = [&err, &path](std::string_view msg) {
    err << path << ": warning: " << msg << '\n';
  };
  if (path == "-") return io::parse_document(std::cin, warn);
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return io::parse_document(in, warn);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out.flush()) throw Error("failed writing " + path);
}

int cmd_rank(Context& ctx, const std::string& file, bool json) {
  const auto g = to_bipartite(load(file, ctx.err).pattern);
  const std::size_t r = structural_rank(g);
  const bool full = r == g.n_left();
  if (json) {
    ctx.out << Json{{"rank", r}, {"full", full}}.dump() << '\n';
  } else {
    ctx.out << "rank: " << r << (full ? " (full)" : " (deficient)") << '\n';
  }
  return full ? kOk : kNegative;
}

int cmd_resilience(Context& ctx, const std::string& file, bool weak, std::uint64_t budget,
                   bool json) {
  const auto g = to_bipartite(load(file, ctx.err).pattern);
  if (weak) {
    const std::size_t rank = structural_rank(g);
    try {
      const int rs = weak_resilience(g, budget);
      if (json) {
        ctx.out << Json{{"rank", rank}, {"weak_resilience", rs}}.dump() << '\n';
      } else {
        ctx.out << "weak_resilience: " << rs << '\n';
      }
      return rs < 0 ? kNegative : kOk;
    } catch (const BudgetExceeded& e) {
      if (json) {
        ctx.out << Json{{"rank", rank},
                        {"weak_resilience_lower_bound", e.lower_bound()},
                        {"budget_exceeded", true}}
                       .dump()
                << '\n';
      } else {
        ctx.out << "weak_resilience: >= " << e.lower_bound() << " (budget exceeded)\n";
      }
      ctx.err << "error: " << e.what() << '\n';
      return kBudgetExceeded;
    }
  }
  const auto report = strong_resilience(g);
  if (json) {
    ctx.out << Json{{"rank", report.structural_rank},
                    {"strong_resilience", report.strong_resilience},
                    {"ell_star", report.ell_star}}
                   .dump()
            << '\n';
  } else {
    ctx.out << "strong_resilience: " << report.strong_resilience
            << ", ell_star: " << report.ell_star << '\n';
  }
  return report.strong_resilience < 0 ? kNegative : kOk;
}

int cmd_decompose(Context& ctx, const std::string& file, const std::string& dot, bool json) {
  const auto g = to_bipartite(load(file, ctx.err).pattern);
  const auto report = strong_resilience(g);
  if (!dot.empty()) write_file(dot, io::export_dot(g, report.matchings));
  if (json) {
    Json matchings = Json::array();
    for (const Matching& m : report.matchings) matchings.push_back(edges_json(m.edges()));
    ctx.out << Json{{"rank", report.structural_rank},
                    {"strong_resilience", report.strong_resilience},
                    {"ell_star", report.ell_star},
                    {"matchings", matchings}}
                   .dump()
            << '\n';
  } else {
    ctx.out << "strong_resilience: " << report.strong_resilience
            << ", ell_star: " << report.ell_star << '\n';
    for (std::size_t k = 0; k < report.matchings.size(); ++k) {
      ctx.out << "matching " << k + 1 << ": " << edges_text(report.matchings[k].edges())
              << '\n';
    }
    if (report.matchings.empty()) ctx.out << "no left-perfect matching\n";
  }
  return report.matchings.empty() ? kNegative : kOk;
}

struct AugmentOptions {
  std::optional<std::size_t> target;
  std::optional<std::size_t> budget;
  std::string out_file;
  bool exact_spend = false;
  bool json = false;
};

int cmd_augment(Context& ctx, const std::string& file, const AugmentOptions& opt) {
  auto doc = load(file, ctx.err);
  const auto g = to_bipartite(doc.pattern);
  AugmentationPlan plan;
  int best = -1;
  if (opt.target) {
    plan = min_edges_for_target(g, *opt.target);
    best = static_cast<int>(*opt.target);
  } else {
    plan = best_within_budget(g, *opt.budget, opt.exact_spend);
    for (std::size_t k = 0; k < plan.delta_by_k.size(); ++k) {
      if (plan.delta_by_k[k] <= *opt.budget) best = static_cast<int>(k);
    }
  }
  if (!opt.out_file.empty()) {
    doc.pattern = from_bipartite(plan.result_graph);
    write_file(opt.out_file, io::serialize(doc));
  }
  if (opt.json) {
    Json j;
    if (opt.target) {
      j["target"] = *opt.target;
    } else {
      j["budget"] = *opt.budget;
      j["best_target"] = best;
      j["delta_by_k"] = plan.delta_by_k;
    }
    j["delta_star"] = plan.delta_star;
    j["added_edges"] = edges_json(plan.added_edges);
    j["strong_resilience"] = plan.achieved_resilience;
    ctx.out << j.dump() << '\n';
  } else {
    if (!opt.target) ctx.out << "best_target: " << best << '\n';
    ctx.out << "delta_star: " << plan.delta_star << ", added: " << edges_text(plan.added_edges)
            << '\n';
    ctx.out << "strong_resilience: " << plan.achieved_resilience << '\n';
  }
  return best < 0 ? kNegative : kOk;
}

struct CheckTally {
  std::size_t agreed = 0;
  std::size_t mismatched = 0;
  std::size_t skipped = 0;
};

template <class Flow, class Oracle>
void check(Context& ctx, CheckTally& tally, Json& rows, const std::string& label, Flow&& flow,
           Oracle&& oracle, bool json) {
  Json row{{"check", label}};
  try {
    const long long a = static_cast<long long>(flow());
    const long long b = static_cast<long long>(oracle());
    const bool ok = a == b;
    ok ? ++tally.agreed : ++tally.mismatched;
    row["flow"] = a;
    row["oracle"] = b;
    row["status"] = ok ? "ok" : "mismatch";
    if (!json) {
      ctx.out << label << ": flow " << a << ", oracle " << b << (ok ? ", ok" : ", MISMATCH")
              << '\n';
    }
  } catch (const BudgetExceeded&) {
    ++tally.skipped;
    row["status"] = "skipped";
    if (!json) ctx.out << label << ": skipped (budget exceeded)\n";
  }
  rows.push_back(std::move(row));
}

int cmd_verify(Context& ctx, const std::string& file, bool json) {
  const auto g = to_bipartite(load(file, ctx.err).pattern);
  const auto budget = oracle::budget_from_environment();
  CheckTally tally;
  Json rows = Json::array();
  check(ctx, tally, rows, "rank", [&] { return structural_rank(g); },
        [&] { return oracle::brute_rank(g, budget); }, json);
  check(ctx, tally, rows, "strong_resilience",
        [&] { return strong_resilience(g).strong_resilience; },
        [&] { return oracle::brute_strong_resilience(g, budget); }, json);
  check(ctx, tally, rows, "weak_resilience",
        [&] { return weak_resilience(g, budget.max_subsets); },
        [&] { return oracle::brute_weak_resilience(g, budget); }, json);
  for (std::size_t k = 0; k < g.n_right(); ++k) {
    check(ctx, tally, rows, "delta_star(k=" + std::to_string(k) + ")",
          [&] { return min_edge_count(g, k); },
          [&] { return oracle::brute_min_augmentation(g, k, budget); }, json);
  }
  if (json) {
    ctx.out << Json{{"checks", rows},
                    {"agreed", tally.agreed},
                    {"mismatched", tally.mismatched},
                    {"skipped", tally.skipped}}
                   .dump()
            << '\n';
  } else {
    ctx.out << "verify: " << tally.agreed << " agreed, " << tally.mismatched << " mismatched, "
            << tally.skipped << " skipped\n";
  }
  if (tally.mismatched > 0) return kNegative;
  if (tally.skipped > 0) return kBudgetExceeded;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural rank and resilience of sparsity patterns", "sprank"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string file;
  bool json = false;

  auto* rank = app.add_subcommand("rank", "Structural rank (exit 3 if rank-deficient)");
  rank->add_option("FILE", file, "Pattern file (.spm text or JSON, - for stdin)")->required();
  rank->add_flag("--json", json, "Machine-readable output");

  bool weak = false;
  std::uint64_t weak_budget = kDefaultWeakBudget;
  auto* res = app.add_subcommand("resilience", "Strong (default) or weak resilience");
  res->add_option("FILE", file, "Pattern file")->required();
  res->add_flag("--weak", weak, "Brute-force weak resilience instead");
  res->add_option("--budget", weak_budget, "Subset budget for --weak")
      ->check(CLI::PositiveNumber);
  res->add_flag("--json", json, "Machine-readable output");

  std::string dot;
  auto* dec = app.add_subcommand("decompose", "Disjoint left-perfect matchings");
  dec->add_option("FILE", file, "Pattern file")->required();
  dec->add_option("--dot", dot, "Write a Graphviz DOT drawing to this file");
  dec->add_flag("--json", json, "Machine-readable output");

  AugmentOptions aug_opt;
  auto* aug = app.add_subcommand("augment", "Plan edge additions");
  aug->add_option("FILE", file, "Pattern file")->required();
  auto* mode = aug->add_option_group("mode", "Exactly one of --target / --budget");
  mode->add_option("--target", aug_opt.target, "Reach strong resilience K");
  auto* spend = mode->add_option("--budget", aug_opt.budget, "Best resilience with P additions");
  mode->require_option(1);
  aug->add_option("--out", aug_opt.out_file, "Write the augmented pattern to this file");
  aug->add_flag("--exact-spend", aug_opt.exact_spend, "Pad the plan to use the whole budget")
      ->needs(spend);
  aug->add_flag("--json", aug_opt.json, "Machine-readable output");

  auto* ver = app.add_subcommand("verify", "Cross-check flow results against the oracle");
  ver->add_option("FILE", file, "Pattern file")->required();
  ver->add_flag("--json", json, "Machine-readable output");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  Context ctx{out, err};
  try {
    if (rank->parsed()) return cmd_rank(ctx, file, json);
    if (res->parsed()) return cmd_resilience(ctx, file, weak, weak_budget, json);
    if (dec->parsed()) return cmd_decompose(ctx, file, dot, json);
    if (aug->parsed()) return cmd_augment(ctx, file, aug_opt);
    return cmd_verify(ctx, file, json);
  } catch (const InvalidK& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const ParseError& e) {
    err << file << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace sprank::cli
