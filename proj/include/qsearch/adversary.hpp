#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsearch/game.hpp"

namespace qsearch {

/// Whether the points left uncovered by `lines` all lie on one line of PG(2,q).
/// Returns the lexicographically first such line, or nullopt.
std::optional<Subspace> cover_extension_check(const ProjectiveSpace& plane,
                                              const std::vector<Subspace>& lines);
/// Same test given the union of the lines' point sets.
std::optional<Subspace> cover_extension_check(const ProjectiveSpace& plane, const PointSet& covered);

/// Adversary for point/line search in PG(2,q).
///
/// Before its first YES it keeps a set L of charged lines whose union never
/// extends to a cover of the plane by a single further line. A line query is
/// answered YES exactly when adding it would allow such a completion. A point
/// query is answered NO and turned into a line: either a line through the
/// point that keeps L non-completable (volunteered as NotInLine), or, when no
/// such line exists, a completing line avoiding the point (volunteered as
/// InLine). After the first YES it answers NO whenever some candidate survives.
class AdversaryOracle final : public Oracle {
 public:
  /// Throws Precondition unless n = 3.
  explicit AdversaryOracle(const ProjectiveSpace& plane);

  std::string name() const override { return "adversary"; }
  Answer answer(const Transcript& history, const Subspace& query) override;

  /// Points still consistent with everything answered so far.
  const PointSet& candidates() const { return candidates_; }
  /// A concrete point consistent with the whole transcript.
  ProjPoint witness() const;
  /// Per-query name of the rule that produced each answer.
  const std::vector<std::string>& branches() const { return branches_; }
  std::map<std::string, int> branch_counts() const;

 private:
  Answer answer_after_yes(const PointSet& query_mask);
  void charge(const Subspace& line);

  const ProjectiveSpace& plane_;
  bool said_yes_ = false;
  std::vector<Subspace> charged_;
  PointSet covered_;
  PointSet candidates_;
  std::vector<std::string> branches_;
};

}  // namespace qsearch
