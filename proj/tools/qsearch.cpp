// qsearch: command-line front end for the subspace search library.
//
// Exit codes: 0 every check passed, 1 a bound or oracle check failed,
// 2 usage or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsearch/adversary.hpp"
#include "qsearch/bounds.hpp"
#include "qsearch/error.hpp"
#include "qsearch/game.hpp"
#include "qsearch/io.hpp"
#include "qsearch/searchers.hpp"
#include "qsearch/separating.hpp"

using namespace qsearch;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 0;
  unsigned q = 0;
  std::string strategy = "plane";
  std::string oracle = "fixed:all";
  std::string method = "explicit";
  std::optional<std::uint64_t> seed;
  int retries = kDefaultMaxRetries;
  std::optional<std::size_t> limit;
  int max_size = 8;
  bool lines_only = false;
  std::string format = "json";
  std::string out;
  std::string transcript;
  std::string file;
  bool csv = false;
  bool json_flag = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

void emit(const json& report, const std::string& format) {
  if (format == "text") {
    for (const auto& [key, value] : report.items()) {
      std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

json check(const std::string& name, const BoundValue& bound, double measured, bool ok) {
  json j;
  j["check"] = name;
  j["bound"] = bound_to_json(bound);
  j["measured"] = measured;
  j["passed"] = ok;
  return j;
}

BoundValue integer_bound(const std::string& tag, std::uint64_t v) {
  return BoundValue{tag, static_cast<double>(v), std::to_string(v)};
}

struct Space {
  std::shared_ptr<const Field> field;
  std::unique_ptr<ProjectiveSpace> space;
};

Space make_space(const RunConfig& cfg) {
  if (cfg.n < 2) throw UsageError("--n must be at least 2");
  Space s;
  s.field = Field::make_shared(cfg.q);
  s.space = std::make_unique<ProjectiveSpace>(s.field, cfg.n);
  return s;
}

int cmd_adaptive(const RunConfig& cfg) {
  Space sp = make_space(cfg);
  const ProjectiveSpace& space = *sp.space;
  const unsigned q = cfg.q;
  const int n = cfg.n;
  make_searcher(space, cfg.strategy);  // validates the name
  const bool plane_strategy = cfg.strategy == "plane" || cfg.strategy.rfind("random-lines:", 0) == 0;
  if (plane_strategy && n != 3) throw UsageError("strategy '" + cfg.strategy + "' needs n = 3");
  const std::size_t limit = cfg.limit.value_or(default_limit(space));

  json report;
  report["command"] = "adaptive";
  report["n"] = n;
  report["q"] = q;
  report["strategy"] = cfg.strategy;
  report["oracle"] = cfg.oracle;
  json checks = json::array();
  bool ok = true;

  std::optional<BoundValue> upper;
  if (cfg.strategy == "plane") {
    upper = integer_bound("plane-upper", 2 * q - 1);
  } else if (cfg.strategy == "inductive" || cfg.strategy == "two-round") {
    upper = adaptive_bounds(n, q).upper;
  }

  if (cfg.oracle == "adversary") {
    if (n != 3) throw UsageError("the adversary oracle needs n = 3");
    auto searcher = make_searcher(space, cfg.strategy);
    AdversaryOracle adv(space);
    const Transcript t = run_game(space, *searcher, adv, limit);
    const bool identified = t.identified();
    const BoundValue lower = integer_bound("plane-adversary-lower", 2 * q - 1);
    const bool forced = t.count() >= 2 * q - 1;
    checks.push_back(check("forced-count", lower, static_cast<double>(t.count()), forced));
    ok = ok && forced && identified;
    if (upper) {
      const bool within = t.count() <= upper->value;
      checks.push_back(check("within-upper", *upper, static_cast<double>(t.count()), within));
      ok = ok && within;
    }
    report["forced"] = t.count();
    report["identified"] = identified;
    report["witness"] = point_to_string(adv.witness());
    json branches = json::object();
    for (const auto& [b, c] : adv.branch_counts()) branches[b] = c;
    report["branches"] = std::move(branches);
    if (!cfg.transcript.empty()) write_file(cfg.transcript, dump_transcript(*sp.field, t));
  } else if (cfg.oracle.rfind("fixed:", 0) == 0) {
    const std::string target = cfg.oracle.substr(6);
    std::vector<ProjPoint> marked;
    if (target == "all") {
      marked = space.points();
    } else {
      marked.push_back(parse_point(*sp.field, n, target));
    }
    std::size_t worst = 0, total = 0, wrong = 0, exact_mismatch = 0;
    std::string worst_point;
    std::optional<Transcript> single;
    for (const ProjPoint& p : marked) {
      auto searcher = make_searcher(space, cfg.strategy);
      FixedOracle oracle(space, p);
      Transcript t = run_game(space, *searcher, oracle, limit);
      const auto* id = std::get_if<Identified>(&t.outcome);
      if (!id || !(id->point == p)) ++wrong;
      if (cfg.strategy == "two-round") {
        std::size_t nz = 0;
        for (Elem e : p.coords) nz += !e.is_zero();
        if (t.count() != n + (nz - 1) * (q - 2)) ++exact_mismatch;
      }
      if (t.count() > worst || worst_point.empty()) {
        worst = t.count();
        worst_point = point_to_string(p);
      }
      total += t.count();
      if (marked.size() == 1) single = std::move(t);
    }
    report["games"] = marked.size();
    report["max_queries"] = worst;
    report["mean_queries"] = static_cast<double>(total) / static_cast<double>(marked.size());
    report["worst_point"] = worst_point;
    report["misidentified"] = wrong;
    ok = ok && wrong == 0;
    if (upper) {
      const bool within = worst <= upper->value;
      checks.push_back(check("max-within-upper", *upper, static_cast<double>(worst), within));
      ok = ok && within;
    }
    if (target == "all") {
      const AdaptiveBounds ab = adaptive_bounds(n, q);
      const bool above = worst >= ab.lower_ceil;
      checks.push_back(check("max-above-log-lower", ab.lower, static_cast<double>(worst), above));
      ok = ok && above;
    }
    if (cfg.strategy == "two-round") {
      report["two_round_count_mismatches"] = exact_mismatch;
      ok = ok && exact_mismatch == 0;
    }
    if (!cfg.transcript.empty()) {
      if (!single) throw UsageError("--transcript needs a single marked point or the adversary");
      write_file(cfg.transcript, dump_transcript(*sp.field, *single));
    }
  } else {
    throw UsageError("oracle must be fixed:<point>, fixed:all or adversary");
  }
  report["checks"] = std::move(checks);
  report["passed"] = ok;
  emit(report, cfg.format);
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_construct(const RunConfig& cfg) {
  Space sp = make_space(cfg);
  const ProjectiveSpace& space = *sp.space;
  json report;
  report["command"] = "construct";
  report["n"] = cfg.n;
  report["q"] = cfg.q;
  report["method"] = cfg.method;
  QuerySet set;
  BoundValue bound;
  if (cfg.method == "explicit") {
    set = explicit_construction(*sp.field, cfg.n);
    bound = nonadaptive_bounds(cfg.n, cfg.q).upper_explicit;
  } else if (cfg.method == "random") {
    if (!cfg.seed) throw UsageError("--method random requires --seed");
    if (cfg.retries < 1) throw UsageError("--retries must be positive");
    RandomConstruction r = random_construction(space, *cfg.seed, cfg.retries);
    report["seed"] = *cfg.seed;
    report["attempts"] = r.attempts;
    set = std::move(r.set);
    bound = nonadaptive_bounds(cfg.n, cfg.q).upper_random;
  } else {
    throw UsageError("--method must be explicit or random");
  }
  const bool separating = is_separating(space, set).separating;
  const bool within = set.size() <= bound.value;
  report["size"] = set.size();
  report["provenance"] = set.provenance.label();
  report["separating"] = separating;
  json checks = json::array();
  checks.push_back(check("size-within-upper", bound, static_cast<double>(set.size()), within));
  const BoundedQueryBound k = bounded_query_lower(cfg.n, cfg.q);
  const bool above = set.size() >= k.full.value;
  checks.push_back(check("size-above-bounded-query-lower", k.full, static_cast<double>(set.size()), above));
  report["checks"] = std::move(checks);
  const bool ok = separating && within && above;
  report["passed"] = ok;
  if (separating) {
    const std::string text = write_query_set(*sp.field, set);
    if (cfg.out.empty()) {
      report["query_set"] = text;
    } else {
      write_file(cfg.out, text);
      report["file"] = cfg.out;
    }
  }
  emit(report, cfg.format);
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_verify(const RunConfig& cfg) {
  LoadedQuerySet loaded = read_query_set(read_file(cfg.file));
  ProjectiveSpace space(loaded.field, loaded.set.n);
  validate(space, loaded.set);
  for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
  const SeparationVerdict v = is_separating(space, loaded.set);
  json report;
  report["command"] = "verify";
  report["n"] = loaded.set.n;
  report["q"] = loaded.set.q;
  report["size"] = loaded.set.size();
  report["separating"] = v.separating;
  if (v.witness) {
    report["witness"] = json::array({point_to_string(space.point(v.witness->first)),
                                     point_to_string(space.point(v.witness->second))});
  }
  report["warnings"] = loaded.warnings;
  emit(report, cfg.format);
  return v.separating ? kExitPass : kExitCheckFailed;
}

int cmd_bounds(const RunConfig& cfg) {
  if (cfg.n < 2) throw UsageError("--n must be at least 2");
  const BoundsReport r = bounds_report(cfg.n, cfg.q);
  if (cfg.csv) {
    const auto& header = bounds_csv_header();
    for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
    std::cout << "\n" << bounds_csv_row(r) << "\n";
    return kExitPass;
  }
  json report;
  report["command"] = "bounds";
  const json body = bounds_to_json(r);
  for (const auto& [key, value] : body.items()) report[key] = value;
  emit(report, cfg.json_flag ? "json" : cfg.format);
  return kExitPass;
}

int cmd_claim_count(const RunConfig& cfg) {
  if (cfg.n < 3) throw UsageError("claim-count needs n >= 3");
  Space sp = make_space(cfg);
  const BigInt formula = claim_count_formula(cfg.n, cfg.q);
  const ClaimSweep sweep = claim_count_all_pairs(*sp.space);
  const bool ok = BigInt(sweep.min_count) == formula && BigInt(sweep.max_count) == formula;
  json report;
  report["command"] = "oracle claim-count";
  report["n"] = cfg.n;
  report["q"] = cfg.q;
  report["formula"] = formula.str();
  report["brute_min"] = sweep.min_count;
  report["brute_max"] = sweep.max_count;
  report["pairs"] = sweep.pairs;
  report["subspaces"] = sweep.subspaces;
  report["passed"] = ok;
  emit(report, cfg.format);
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_brute_min(const RunConfig& cfg) {
  Space sp = make_space(cfg);
  json report;
  report["command"] = "oracle brute-min";
  report["n"] = cfg.n;
  report["q"] = cfg.q;
  report["max"] = cfg.max_size;
  report["lines_only"] = cfg.lines_only;
  MinimumSearch m;
  try {
    m = brute_force_minimum(*sp.space, cfg.max_size, cfg.lines_only);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kExhausted) throw;
    report["found"] = false;
    report["passed"] = false;
    emit(report, cfg.format);
    return kExitCheckFailed;
  }
  const BoundedQueryBound k = bounded_query_lower(cfg.n, cfg.q);
  const NonadaptiveBounds nb = nonadaptive_bounds(cfg.n, cfg.q);
  json checks = json::array();
  const bool above = m.size >= k.full.value;
  const bool below = m.size <= nb.upper_explicit.value;
  checks.push_back(check("minimum-above-bounded-query-lower", k.full, m.size, above));
  checks.push_back(check("minimum-below-explicit", nb.upper_explicit, m.size, below));
  bool ok = above && below;
  if (cfg.n == 3 && cfg.q >= 3) {
    const BoundValue lower = *plane_specials(cfg.q).semi_resolving_lower;
    const bool sr = m.size >= lower.value;
    checks.push_back(check("minimum-above-semi-resolving-lower", lower, m.size, sr));
    ok = ok && sr;
  }
  report["found"] = true;
  report["minimum"] = m.size;
  report["nodes"] = m.nodes;
  json witness = json::array();
  for (const Subspace& s : m.witness.queries) witness.push_back(to_literal(*sp.field, s));
  report["witness"] = std::move(witness);
  report["checks"] = std::move(checks);
  report["passed"] = ok;
  emit(report, cfg.format);
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_replay(const RunConfig& cfg) {
  const std::string text = read_file(cfg.file);
  const ReplayResult r = replay_transcript(text);
  json report;
  report["command"] = "replay";
  report["file"] = cfg.file;
  report["searcher"] = r.transcript.searcher;
  report["oracle"] = r.transcript.oracle;
  report["count"] = r.transcript.count();
  report["reproduced"] = r.ok;
  report["message"] = r.message;
  emit(report, cfg.format);
  return r.ok ? kExitPass : kExitCheckFailed;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRetriesExhausted:
    case ErrorCode::kNotSeparating:
    case ErrorCode::kUniquenessViolation:
    case ErrorCode::kExhausted:
    case ErrorCode::kInconsistentOracle:
    case ErrorCode::kBadAnnounce:
    case ErrorCode::kInternalInconsistency:
      return kExitCheckFailed;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for a marked projective point with subspace queries"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_nq = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Ambient dimension of GF(q)^n")->required();
    sub->add_option("--q", cfg.q, "Field order, a prime power")->required();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* adaptive = app.add_subcommand("adaptive", "Play adaptive search games");
  add_nq(adaptive);
  adaptive->add_option("--strategy", cfg.strategy, "plane, inductive, two-round or random-lines:<seed>");
  adaptive->add_option("--oracle", cfg.oracle, "fixed:<point>, fixed:all or adversary");
  adaptive->add_option("--limit", cfg.limit, "Query limit per game (default: number of points)");
  adaptive->add_option("--transcript", cfg.transcript, "Write the game transcript to this file");
  add_format(adaptive);

  auto* construct = app.add_subcommand("construct", "Build a separating system");
  add_nq(construct);
  construct->add_option("--method", cfg.method, "explicit or random");
  construct->add_option("--seed", cfg.seed, "Seed for the random construction");
  construct->add_option("--retries", cfg.retries, "Retry cap for the random construction");
  construct->add_option("--out", cfg.out, "Write the query set file here");
  add_format(construct);

  auto* verify = app.add_subcommand("verify", "Check whether a query set file separates all points");
  verify->add_option("file", cfg.file, "Query set file")->required();
  add_format(verify);

  auto* bounds = app.add_subcommand("bounds", "Evaluate the closed-form bounds");
  add_nq(bounds);
  auto* csv = bounds->add_flag("--csv", cfg.csv, "CSV output");
  bounds->add_flag("--json", cfg.json_flag, "JSON output (default)")->excludes(csv);
  add_format(bounds);

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->require_subcommand(1);
  auto* claim = oracle->add_subcommand("claim-count", "Compare the pencil counting formula with brute force");
  add_nq(claim);
  add_format(claim);
  auto* brute = oracle->add_subcommand("brute-min", "Exact minimum separating system size");
  add_nq(brute);
  brute->add_option("--max", cfg.max_size, "Largest size to try");
  brute->add_flag("--lines-only", cfg.lines_only, "Search hyperplanes only");
  add_format(brute);

  auto* replay = app.add_subcommand("replay", "Re-validate a transcript file");
  replay->add_option("file", cfg.file, "Transcript JSON")->required();
  add_format(replay);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (adaptive->parsed()) return cmd_adaptive(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg);
    if (claim->parsed()) return cmd_claim_count(cfg);
    if (brute->parsed()) return cmd_brute_min(cfg);
    if (replay->parsed()) return cmd_replay(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
