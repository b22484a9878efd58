#include "qsearch/io.hpp"

#include <charconv>
#include <sstream>

#include "qsearch/error.hpp"
#include "qsearch/searchers.hpp"

namespace qsearch {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

json constraint_to_json(const Field& f, const Constraint& c) {
  json j;
  j["kind"] = c.kind == Constraint::Kind::kInLine ? "in-line" : "not-in-line";
  j["line"] = to_literal(f, c.line);
  return j;
}

Subspace literal_field(const Field& f, const json& j, const char* what) {
  if (!j.is_string()) parse_error(std::string(what) + " must be a subspace literal");
  return parse_literal(f, j.get<std::string>()).subspace;
}

const json& member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field '") + key + "'");
  return *it;
}

/// Replays recorded answers and checks the searcher asks the recorded queries.
class ScriptedOracle final : public Oracle {
 public:
  ScriptedOracle(std::string name, const std::vector<Entry>& entries)
      : name_(std::move(name)), entries_(entries) {}

  std::string name() const override { return name_; }
  Answer answer(const Transcript& history, const Subspace& query) override {
    const std::size_t i = history.count();
    if (i >= entries_.size()) {
      throw Error(ErrorCode::kPrecondition, "searcher asked more queries than recorded");
    }
    if (!(entries_[i].query == query)) {
      throw Error(ErrorCode::kPrecondition,
                  "searcher query " + std::to_string(i + 1) + " differs from the recorded one");
    }
    return entries_[i].answer;
  }

 private:
  std::string name_;
  const std::vector<Entry>& entries_;
};

}  // namespace

ProjPoint parse_point(const Field& f, int n, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') parse_error("unbalanced parenthesis in point '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
  }
  Vec v;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view cell = trim(text.substr(0, comma));
    unsigned x = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
      parse_error("bad coordinate '" + std::string(cell) + "'");
    }
    if (x >= f.q()) parse_error("coordinate " + std::to_string(x) + " out of range");
    v.push_back(Elem{static_cast<std::uint16_t>(x)});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (static_cast<int>(v.size()) != n) {
    parse_error("point has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(n));
  }
  bool zero = true;
  for (Elem e : v) zero = zero && e.is_zero();
  if (zero) parse_error("the zero vector is not a point");
  return normalize_point(f, v);
}

std::string write_query_set(const Field& f, const QuerySet& set) {
  std::string out = std::to_string(set.q) + " " + std::to_string(set.n) + " " +
                    std::to_string(set.size()) + "\n";
  for (const Subspace& s : set.queries) out += to_literal(f, s) + "\n";
  return out;
}

LoadedQuerySet read_query_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line) && trim(line).empty()) {
  }
  std::istringstream header(line);
  long q = 0, n = 0, count = 0;
  std::string extra;
  if (!(header >> q >> n >> count) || (header >> extra)) {
    parse_error("header must be 'q n count'");
  }
  if (q < 2 || n < 2 || count < 0) parse_error("header values out of range");

  LoadedQuerySet out;
  out.field = Field::make_shared(static_cast<unsigned>(q));
  out.set.q = static_cast<unsigned>(q);
  out.set.n = static_cast<int>(n);
  out.set.provenance.kind = Provenance::Kind::kUser;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    ParsedSubspace p = parse_literal(*out.field, trim(line));
    if (p.subspace.n() != n) parse_error("line " + std::to_string(lineno) + ": wrong dimension n");
    if (p.recanonicalized) {
      out.warnings.push_back("line " + std::to_string(lineno) + ": basis was not in RREF; re-canonicalized");
    }
    out.set.queries.push_back(std::move(p.subspace));
  }
  if (static_cast<long>(out.set.size()) != count) {
    parse_error("header announces " + std::to_string(count) + " queries, file has " +
                std::to_string(out.set.size()));
  }
  return out;
}

json transcript_to_json(const Field& f, const Transcript& t) {
  json j;
  j["n"] = t.n;
  j["q"] = t.q;
  j["searcher"] = t.searcher;
  j["oracle"] = t.oracle;
  json entries = json::array();
  for (const Entry& e : t.entries) {
    json je;
    je["query"] = to_literal(f, e.query);
    je["verdict"] = e.answer.verdict == Verdict::kYes ? "YES" : "NO";
    if (e.answer.volunteered) je["volunteered"] = constraint_to_json(f, *e.answer.volunteered);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  json outcome;
  if (const auto* id = std::get_if<Identified>(&t.outcome)) {
    outcome["kind"] = "identified";
    outcome["point"] = point_to_string(id->point);
  } else if (const auto* ab = std::get_if<Aborted>(&t.outcome)) {
    outcome["kind"] = "aborted";
    outcome["reason"] = ab->reason;
  } else {
    outcome["kind"] = "in-progress";
  }
  j["outcome"] = std::move(outcome);
  j["count"] = t.count();
  return j;
}

Transcript transcript_from_json(const Field& f, const json& j) {
  if (!j.is_object()) parse_error("transcript must be a JSON object");
  Transcript t;
  try {
    t.n = member(j, "n").get<int>();
    t.q = member(j, "q").get<unsigned>();
    t.searcher = member(j, "searcher").get<std::string>();
    t.oracle = member(j, "oracle").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("bad transcript header: ") + e.what());
  }
  if (t.q != f.q()) parse_error("transcript q does not match the field");
  const json& entries = member(j, "entries");
  if (!entries.is_array()) parse_error("'entries' must be an array");
  for (const json& je : entries) {
    Entry e;
    e.query = literal_field(f, member(je, "query"), "query");
    if (e.query.n() != t.n) parse_error("query dimension differs from n");
    const json& v = member(je, "verdict");
    if (v == "YES") {
      e.answer.verdict = Verdict::kYes;
    } else if (v == "NO") {
      e.answer.verdict = Verdict::kNo;
    } else {
      parse_error("verdict must be YES or NO");
    }
    if (auto it = je.find("volunteered"); it != je.end()) {
      Constraint c;
      const json& kind = member(*it, "kind");
      if (kind == "in-line") {
        c.kind = Constraint::Kind::kInLine;
      } else if (kind == "not-in-line") {
        c.kind = Constraint::Kind::kNotInLine;
      } else {
        parse_error("constraint kind must be in-line or not-in-line");
      }
      c.line = literal_field(f, member(*it, "line"), "constraint line");
      e.answer.volunteered = std::move(c);
    }
    t.entries.push_back(std::move(e));
  }
  const json& outcome = member(j, "outcome");
  const json& kind = member(outcome, "kind");
  if (kind == "identified") {
    t.outcome = Identified{parse_point(f, t.n, member(outcome, "point").get<std::string>())};
  } else if (kind == "aborted") {
    t.outcome = Aborted{member(outcome, "reason").get<std::string>()};
  } else if (kind == "in-progress") {
    t.outcome = InProgress{};
  } else {
    parse_error("unknown outcome kind");
  }
  const json& count = member(j, "count");
  if (!count.is_number_unsigned() || count.get<std::size_t>() != t.count()) {
    parse_error("'count' does not match the number of entries");
  }
  return t;
}

std::string dump_transcript(const Field& f, const Transcript& t) {
  return transcript_to_json(f, t).dump(2) + "\n";
}

ReplayResult replay_transcript(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) parse_error("transcript must be a JSON object");
  unsigned q = 0;
  int n = 0;
  try {
    q = member(j, "q").get<unsigned>();
    n = member(j, "n").get<int>();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("bad transcript header: ") + e.what());
  }
  auto field = Field::make_shared(q);
  ProjectiveSpace space(field, n, point_cap_from_env());

  ReplayResult r;
  r.transcript = transcript_from_json(*field, j);
  const Transcript& recorded = r.transcript;

  PointSet candidates = space.full_set();
  for (std::size_t i = 0; i < recorded.count(); ++i) {
    apply_entry(space, recorded.entries[i], candidates);
    if (!candidates.any()) {
      r.message = "no point is consistent with the answers after query " + std::to_string(i + 1);
      return r;
    }
  }

  std::size_t limit = default_limit(space);
  if (std::holds_alternative<Aborted>(recorded.outcome)) limit = recorded.count();
  try {
    auto searcher = make_searcher(space, recorded.searcher);
    ScriptedOracle oracle(recorded.oracle, recorded.entries);
    const Transcript again = run_game(space, *searcher, oracle, std::max<std::size_t>(limit, 1));
    const std::string regenerated = dump_transcript(*field, again);
    if (regenerated != text) {
      r.message = again == recorded ? "transcript matches but its text is not in canonical form"
                                    : "regenerated transcript differs from the recorded one";
      return r;
    }
  } catch (const Error& e) {
    r.message = e.what();
    return r;
  }
  r.ok = true;
  r.message = "transcript reproduced byte-for-byte";
  return r;
}

json bound_to_json(const BoundValue& v) {
  json j;
  j["tag"] = v.tag;
  j["value"] = v.value;
  if (v.exact) j["exact"] = *v.exact;
  return j;
}

json bounds_to_json(const BoundsReport& r) {
  json j;
  j["n"] = r.n;
  j["q"] = r.q;
  json a;
  a["points"] = r.adaptive.points.str();
  a["lower"] = bound_to_json(r.adaptive.lower);
  a["lower_ceil"] = r.adaptive.lower_ceil;
  a["upper"] = bound_to_json(r.adaptive.upper);
  j["adaptive"] = std::move(a);
  json na;
  na["bounded_query_lower"] = bound_to_json(r.nonadaptive.bounded_query.full);
  na["bounded_query_lower_simplified"] = bound_to_json(r.nonadaptive.bounded_query.simplified);
  na["upper_explicit"] = bound_to_json(r.nonadaptive.upper_explicit);
  na["upper_random"] = bound_to_json(r.nonadaptive.upper_random);
  na["upper"] = bound_to_json(r.nonadaptive.headline_upper);
  j["nonadaptive"] = std::move(na);
  if (r.plane) {
    const PlaneSpecials& s = *r.plane;
    json p;
    json lowers = json::array();
    for (const BoundValue& v : s.tau2_lowers) lowers.push_back(bound_to_json(v));
    p["tau2_lowers"] = std::move(lowers);
    p["tau2_lower"] = bound_to_json(s.tau2_best);
    auto opt = [&](const char* key, const std::optional<BoundValue>& v) {
      p[key] = v ? bound_to_json(*v) : json(nullptr);
    };
    opt("semi_resolving_lower", s.semi_resolving_lower);
    opt("exact_m3q", s.exact_m3q);
    opt("tau2_upper", s.tau2_upper);
    opt("m3q_upper", s.m3q_upper);
    j["plane"] = std::move(p);
  } else {
    j["plane"] = nullptr;
  }
  return j;
}

}  // namespace qsearch
