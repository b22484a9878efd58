#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qsearch/projective_space.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

enum class Verdict { kNo, kYes };

/// Extra information an oracle may attach to an answer to a point query.
struct Constraint {
  enum class Kind { kNotInLine, kInLine };
  Kind kind = Kind::kNotInLine;
  Subspace line;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Answer {
  Verdict verdict = Verdict::kNo;
  std::optional<Constraint> volunteered;

  friend bool operator==(const Answer&, const Answer&) = default;
};

struct Entry {
  Subspace query;
  Answer answer;

  friend bool operator==(const Entry&, const Entry&) = default;
};

struct Identified {
  ProjPoint point;
  friend bool operator==(const Identified&, const Identified&) = default;
};
struct Aborted {
  std::string reason;
  friend bool operator==(const Aborted&, const Aborted&) = default;
};
struct InProgress {
  friend bool operator==(const InProgress&, const InProgress&) = default;
};

using Outcome = std::variant<InProgress, Identified, Aborted>;

struct Transcript {
  int n = 0;
  unsigned q = 0;
  std::string searcher;
  std::string oracle;
  std::vector<Entry> entries;
  Outcome outcome;

  std::size_t count() const { return entries.size(); }
  bool identified() const { return std::holds_alternative<Identified>(outcome); }

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

struct Ask {
  Subspace query;
};
struct Announce {
  ProjPoint point;
};
using Move = std::variant<Ask, Announce>;

/// A searcher instance plays one game. It must announce only once its
/// information leaves a single candidate point.
class Searcher {
 public:
  virtual ~Searcher() = default;
  virtual std::string name() const = 0;
  virtual Move next(const Transcript& history) = 0;
};

class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual std::string name() const = 0;
  virtual Answer answer(const Transcript& history, const Subspace& query) = 0;
};

/// Default safety cap on queries: the number of points.
std::size_t default_limit(const ProjectiveSpace& space);

/// Applies one answered query to a candidate set.
void apply_entry(const ProjectiveSpace& space, const Entry& e, PointSet& candidates);

/// Points consistent with every answer and volunteered constraint in `t`.
PointSet consistent_candidates(const ProjectiveSpace& space, const Transcript& t);

/// Plays searcher against oracle until an announcement or `limit` queries.
/// Throws InconsistentOracle when no point fits the answers and BadAnnounce
/// when the announcement is premature or wrong. Hitting the limit yields Aborted.
Transcript run_game(const ProjectiveSpace& space, Searcher& searcher, Oracle& oracle,
                    std::size_t limit);

/// Answers truthfully for a fixed marked point; never volunteers.
class FixedOracle final : public Oracle {
 public:
  FixedOracle(const ProjectiveSpace& space, ProjPoint marked);

  std::string name() const override;
  Answer answer(const Transcript& history, const Subspace& query) override;

 private:
  const ProjectiveSpace& space_;
  ProjPoint marked_;
};

/// Incrementally folds new transcript entries into a candidate set.
class CandidateTracker {
 public:
  explicit CandidateTracker(const ProjectiveSpace& space)
      : space_(space), candidates_(space.full_set()) {}

  const PointSet& update(const Transcript& t) {
    for (; seen_ < t.entries.size(); ++seen_) apply_entry(space_, t.entries[seen_], candidates_);
    return candidates_;
  }
  const PointSet& candidates() const { return candidates_; }

 private:
  const ProjectiveSpace& space_;
  PointSet candidates_;
  std::size_t seen_ = 0;
};

}  // namespace qsearch
