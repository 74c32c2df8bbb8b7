#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "limlaw/automaton.hpp"
#include "limlaw/chain.hpp"
#include "limlaw/efgame.hpp"
#include "limlaw/errors.hpp"
#include "limlaw/evaluate.hpp"
#include "limlaw/limit.hpp"
#include "limlaw/relational.hpp"
#include "limlaw/translate.hpp"

namespace limlaw::cli {
namespace {

struct Options {
  std::string theory = "convex";
  std::string formula;
  std::string formula_file;
  std::optional<int> k;
  std::uint64_t seed = 42;
  std::uint64_t samples = 100'000;
  int n = 1000;
  std::uint64_t budget = 50'000'000;
  int threads = 1;
  std::size_t max_states = 200'000;
  int horizon = -1;
  std::string emit_json;
  std::string emit_dot;
  bool compare_limit = false;
  bool oracle = false;
  std::vector<std::string> literals;
};

Theory theory_of(const Options& o) {
  const auto t = theory_from_string(o.theory);
  if (!t) throw InputError("unknown theory " + o.theory);
  return *t;
}

std::string formula_text(const Options& o) {
  if (!o.formula.empty() && !o.formula_file.empty()) {
    throw InputError("give either --formula or --formula-file, not both");
  }
  if (!o.formula_file.empty()) {
    std::ifstream in(o.formula_file);
    if (!in) throw InputError("cannot read formula file " + o.formula_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  if (o.formula.empty()) throw InputError("a formula is required (--formula or --formula-file)");
  return o.formula;
}

Formula sentence_of(const Options& o) {
  return parse_sentence(formula_text(o), Signature(theory_of(o)));
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
}

void export_chain(const Options& o, const Chain& chain, const Distribution* limit,
                  std::ostream& out) {
  if (!o.emit_json.empty()) {
    write_file(o.emit_json, chain_to_json(chain, limit));
    out << "wrote " << o.emit_json << "\n";
  }
  if (!o.emit_dot.empty()) {
    write_file(o.emit_dot, chain_to_dot(chain));
    out << "wrote " << o.emit_dot << "\n";
  }
}

ChainOptions chain_options(const Options& o) {
  ChainOptions c;
  c.oracle_budget = o.budget;
  c.max_states = o.max_states;
  return c;
}

int cmd_limit(const Options& o, std::ostream& out) {
  const Theory theory = theory_of(o);
  const Formula sentence = sentence_of(o);
  LimitEngine engine(chain_options(o));
  const LimitResult r = engine.limit(theory, sentence, o.k);
  out << "theory = " << to_string(theory) << "\n";
  out << "sentence = " << to_string(sentence) << "\n";
  if (theory != Theory::convex) out << "convex sentence = " << to_string(r.convex_sentence) << "\n";
  out << "quantifier depth = " << r.quantifier_depth << "\n";
  out << "k = " << r.k << "\n";
  out << "limit = " << exact_string(r.probability) << "\n";
  out << "decimal = " << decimal_string(r.probability) << "\n";
  out << "chain states = " << r.chain.states.size() << "\n";
  if (r.class_count) {
    out << "k-classes = " << *r.class_count << " (limit cross-checked)\n";
  } else {
    out << "k-classes = not enumerated (more than the cross-check cap)\n";
  }
  export_chain(o, r.chain, &r.limit, out);
  return ok;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const Theory theory = theory_of(o);
  const Formula sentence = sentence_of(o);
  if (o.n < 1) throw InputError("--n must be at least 1");
  if (o.samples < 1) throw InputError("--samples must be at least 1");
  if (o.threads < 1) throw InputError("--threads must be at least 1");
  const Estimate e = estimate_probability(theory, sentence, o.n, o.samples, o.seed, o.threads);
  out << "theory = " << to_string(theory) << "\n";
  out << "sentence = " << to_string(sentence) << "\n";
  out << "n = " << o.n << "\n";
  out << "samples = " << e.samples << "\n";
  out << "seed = " << o.seed << "\n";
  out << "hits = " << e.hits << "\n";
  out << "estimate = " << exact_string(e.estimate) << "\n";
  out << "decimal = " << decimal_string(e.estimate) << "\n";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", e.half_width);
  out << "half-width (99% Wilson) = " << buffer << "\n";
  if (o.compare_limit) {
    LimitEngine engine(chain_options(o));
    const LimitResult r = engine.limit(theory, sentence, o.k);
    mpq_class gap = e.estimate - r.probability;
    if (gap < 0) gap = -gap;
    out << "limit = " << exact_string(r.probability) << "\n";
    out << "discrepancy = " << decimal_string(gap) << "\n";
  }
  return ok;
}

int cmd_translate(const Options& o, std::ostream& out) {
  const Theory theory = theory_of(o);
  const Formula f = parse_formula(formula_text(o), Signature(theory));
  out << to_string(translate_to_convex(theory, f)) << "\n";
  return ok;
}

int cmd_ef(const Options& o, std::ostream& out) {
  if (o.literals.size() != 2) throw InputError("ef needs exactly two structure literals");
  if (!o.k) throw InputError("ef needs --k (number of rounds)");
  if (*o.k < 0) throw InputError("--k must be non-negative");
  const Theory theory = theory_of(o);
  const PartSequence a = PartSequence::parse(o.literals[0]);
  const PartSequence b = PartSequence::parse(o.literals[1]);
  if (theory == Theory::convex && !o.oracle) {
    SegmentGame game;
    const bool same = game.equivalent(ConvexLinearOrder{a}, ConvexLinearOrder{b}, *o.k);
    out << (same ? "duplicator" : "spoiler") << "\n";
    out << "method = segment game\n";
    out << "segment types = " << game.memo_size() << "\n";
    return ok;
  }
  std::uint64_t nodes = 0;
  const GameOutcome result = equiv_k_budgeted(RelationalView(theory, a), RelationalView(theory, b),
                                              *o.k, o.budget, &nodes);
  if (result == GameOutcome::budget_exhausted) {
    throw BudgetExhausted("game-tree search exceeded " + std::to_string(o.budget) + " nodes on " +
                          a.to_string() + " vs " + b.to_string());
  }
  out << (result == GameOutcome::duplicator ? "duplicator" : "spoiler") << "\n";
  out << "method = game tree\n";
  out << "nodes = " << nodes << "\n";
  return ok;
}

int cmd_states(const Options& o, std::ostream& out) {
  if (!o.k) throw InputError("states needs --k");
  if (*o.k < 0) throw InputError("--k must be non-negative");
  ChainOptions options = chain_options(o);
  options.horizon = o.horizon;
  const Chain chain = build_chain(*o.k, {}, options);
  const bool truncated = is_truncated(chain);
  out << "k = " << chain.k << "\n";
  out << "states = " << chain.states.size() << (truncated ? " (truncated)" : "") << "\n";
  for (const auto& s : chain.states) {
    out << s.id << ": " << s.representative.shape.to_string();
    if (s.expanded) {
      out << "  +• -> " << s.succ_plus << "  ^ -> " << s.succ_hat;
    } else {
      out << "  (unexpanded)";
    }
    out << "\n";
  }
  if (truncated) {
    export_chain(o, chain, nullptr, out);
  } else {
    const Distribution limit = limiting_distribution(chain);
    export_chain(o, chain, &limit, out);
  }
  return ok;
}

int cmd_check(const Options& o, std::ostream& out) {
  if (o.literals.size() != 1) throw InputError("check needs exactly one structure literal");
  const Theory theory = theory_of(o);
  const Formula sentence = sentence_of(o);
  const RelationalView view(theory, PartSequence::parse(o.literals[0]));
  out << (evaluate(view, sentence) ? "true" : "false") << "\n";
  return ok;
}

void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--theory,--from", o.theory, "convex | layered | composition | fractured")
      ->check(CLI::IsMember({"convex", "layered", "composition", "fractured"}));
  sub.add_option("--formula", o.formula, "formula text");
  sub.add_option("--formula-file", o.formula_file, "file holding the formula");
  sub.add_option("--k", o.k, "rounds / quantifier depth (limit: upward override only)");
  sub.add_option("--seed", o.seed, "sampling seed");
  sub.add_option("--samples", o.samples, "number of samples");
  sub.add_option("--n", o.n, "structure size for sampling");
  sub.add_option("--budget", o.budget, "node budget for game-tree searches");
  sub.add_option("--threads", o.threads, "worker threads");
  sub.add_option("--max-states", o.max_states, "cap on the number of chain states");
  sub.add_option("--emit-json", o.emit_json, "write the chain as JSON");
  sub.add_option("--emit-dot", o.emit_dot, "write the chain as Graphviz DOT");
  sub.add_flag("--compare-limit", o.compare_limit, "also compute the exact limit");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact limiting probabilities of first-order sentences over convex linear "
               "orders, layered permutations and compositions"};
  app.name("limlaw");
  app.require_subcommand(1);
  Options o;

  auto* limit = app.add_subcommand("limit", "exact limiting probability of a sentence");
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate at a fixed size");
  auto* translate = app.add_subcommand("translate", "rewrite a sentence into the convex language");
  auto* ef = app.add_subcommand("ef", "decide the k-round game between two structures");
  auto* states = app.add_subcommand("states", "list the k-equivalence classes");
  auto* check = app.add_subcommand("check", "evaluate a sentence on one structure");
  for (auto* sub : {limit, estimate, translate, ef, states, check}) add_common(*sub, o);
  ef->add_option("structures", o.literals, "two part-sequence literals, e.g. 1,2,1");
  ef->add_flag("--oracle", o.oracle, "force the generic game-tree solver");
  check->add_option("structure", o.literals, "part-sequence literal, e.g. 2,1");
  states->add_option("--horizon", o.horizon, "leave states beyond this many steps unexpanded");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*limit) return cmd_limit(o, out);
    if (*estimate) return cmd_estimate(o, out);
    if (*translate) return cmd_translate(o, out);
    if (*ef) return cmd_ef(o, out);
    if (*states) return cmd_states(o, out);
    if (*check) return cmd_check(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return budget_exhausted;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return internal_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  }
  return input_error;
}

}  // namespace limlaw::cli
