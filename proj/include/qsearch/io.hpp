#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsearch/bounds.hpp"
#include "qsearch/game.hpp"
#include "qsearch/separating.hpp"

namespace qsearch {

/// Parses "(1,0,2)" or "1,0,2" into a normalized point of GF(q)^n.
ProjPoint parse_point(const Field& f, int n, std::string_view text);

/// QuerySet file: a header line `q n count`, then one subspace literal per line.
std::string write_query_set(const Field& f, const QuerySet& set);

struct LoadedQuerySet {
  std::shared_ptr<const Field> field;
  QuerySet set;
  /// One message per literal that had to be re-canonicalized.
  std::vector<std::string> warnings;
};
/// Throws ParseError on malformed files or when the count does not match.
LoadedQuerySet read_query_set(std::string_view text);

nlohmann::ordered_json transcript_to_json(const Field& f, const Transcript& t);
/// Throws ParseError on malformed input.
Transcript transcript_from_json(const Field& f, const nlohmann::ordered_json& j);
/// Canonical text form: two-space indented JSON followed by a newline.
std::string dump_transcript(const Field& f, const Transcript& t);

struct ReplayResult {
  bool ok = false;
  std::string message;
  Transcript transcript;
};
/// Re-plays the named searcher against the recorded answers and checks that
/// the regenerated transcript serializes byte-for-byte to `text`. Also checks
/// that the recorded answers leave a candidate after every step. Throws
/// ParseError when `text` is not a transcript.
ReplayResult replay_transcript(std::string_view text);

nlohmann::ordered_json bound_to_json(const BoundValue& v);
nlohmann::ordered_json bounds_to_json(const BoundsReport& r);

}  // namespace qsearch
