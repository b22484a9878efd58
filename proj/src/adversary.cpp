#include "qsearch/adversary.hpp"

namespace qsearch {

std::optional<Subspace> cover_extension_check(const ProjectiveSpace& plane,
                                              const PointSet& covered) {
  const auto& lines = plane.hyperplanes();
  const PointSet uncovered = covered.complement();
  const std::size_t left = uncovered.count();
  if (left == 0) return lines.front();
  const std::size_t a = uncovered.first();
  if (left == 1) return lines[plane.hyperplanes_through_point(a).front()];
  const std::size_t b = uncovered.next(a + 1);
  Subspace line = span_of(plane.field(), plane.point(a), plane.point(b));
  if (uncovered.is_subset_of(plane.mask(line))) return line;
  return std::nullopt;
}

std::optional<Subspace> cover_extension_check(const ProjectiveSpace& plane,
                                              const std::vector<Subspace>& lines) {
  if (plane.n() != 3) throw Error(ErrorCode::kPrecondition, "cover check needs n = 3");
  PointSet covered = plane.empty_set();
  for (const Subspace& l : lines) {
    if (l.k() != 2) throw Error(ErrorCode::kWrongDimension, "cover check takes lines");
    covered |= plane.mask(l);
  }
  return cover_extension_check(plane, covered);
}

AdversaryOracle::AdversaryOracle(const ProjectiveSpace& plane)
    : plane_(plane), covered_(plane.empty_set()), candidates_(plane.full_set()) {
  if (plane.n() != 3) throw Error(ErrorCode::kPrecondition, "adversary needs n = 3");
  plane.hyperplanes();
}

ProjPoint AdversaryOracle::witness() const {
  if (!candidates_.any()) throw Error(ErrorCode::kInternalInconsistency, "no candidate left");
  return plane_.point(candidates_.first());
}

std::map<std::string, int> AdversaryOracle::branch_counts() const {
  std::map<std::string, int> out;
  for (const auto& b : branches_) ++out[b];
  return out;
}

void AdversaryOracle::charge(const Subspace& line) {
  charged_.push_back(line);
  covered_ |= plane_.mask(line);
  candidates_ = covered_.complement();
}

Answer AdversaryOracle::answer_after_yes(const PointSet& query_mask) {
  const PointSet outside = minus(candidates_, query_mask);
  if (outside.any()) {
    candidates_ = outside;
    branches_.emplace_back("after-yes-no");
    return Answer{Verdict::kNo, {}};
  }
  branches_.emplace_back("after-yes-yes");
  return Answer{Verdict::kYes, {}};
}

Answer AdversaryOracle::answer(const Transcript&, const Subspace& query) {
  if (query.n() != 3 || query.k() < 1 || query.k() > 2) {
    throw Error(ErrorCode::kPrecondition, "adversary accepts only points and lines of PG(2,q)");
  }
  const PointSet query_mask = plane_.mask(query);
  Answer out;
  if (said_yes_) {
    out = answer_after_yes(query_mask);
  } else if (query.k() == 2) {
    if (cover_extension_check(plane_, covered_ | query_mask)) {
      said_yes_ = true;
      candidates_ = minus(query_mask, covered_);
      branches_.emplace_back("line-yes");
      out = Answer{Verdict::kYes, {}};
    } else {
      charge(query);
      branches_.emplace_back("line-no");
      out = Answer{Verdict::kNo, {}};
    }
  } else {
    const std::size_t p = query_mask.first();
    const auto& lines = plane_.hyperplanes();
    const auto& through_p = plane_.hyperplanes_through_point(p);

    bool handled = false;
    for (std::uint32_t h : through_p) {
      if (!cover_extension_check(plane_, covered_ | plane_.mask(lines[h]))) {
        charge(lines[h]);
        branches_.emplace_back("point-to-line");
        out = Answer{Verdict::kNo, Constraint{Constraint::Kind::kNotInLine, lines[h]}};
        handled = true;
        break;
      }
    }

    if (!handled) {
      // Every line through P completes to a cover with one more line; pick a
      // completing line that avoids P and commit to it.
      const Field& f = plane_.field();
      const Subspace& first = lines[through_p.front()];
      const PointSet with_first = covered_ | plane_.mask(first);
      const PointSet rest = with_first.complement();
      const std::size_t left = rest.count();
      if (left == 0) throw Error(ErrorCode::kInternalInconsistency, "charged lines plus one already cover");

      std::optional<Subspace> target;
      if (left == 1) {
        for (std::uint32_t h : plane_.hyperplanes_through_point(rest.first())) {
          if (!plane_.mask(lines[h]).test(p)) {
            target = lines[h];
            break;
          }
        }
        branches_.emplace_back("completion-avoiding-point");
      } else {
        const Subspace completion = *cover_extension_check(plane_, with_first);
        if (!plane_.mask(completion).test(p)) {
          target = completion;
          branches_.emplace_back("completion-avoiding-point");
        } else {
          // Both the first line and its completion pass through P. Take a fresh
          // uncovered point on each; every other line through P is completed by
          // exactly the line joining them.
          PointSet on_first = minus(plane_.mask(first), covered_);
          on_first.reset(p);
          PointSet on_completion = minus(plane_.mask(completion), covered_);
          on_completion.reset(p);
          if (!on_first.any() || !on_completion.any()) {
            throw Error(ErrorCode::kInternalInconsistency, "no uncovered point off P");
          }
          Subspace joined = span_of(f, plane_.point(on_first.first()),
                                    plane_.point(on_completion.first()));
          bool verified = false;
          for (std::uint32_t h : through_p) {
            if (lines[h] == first || lines[h] == completion) continue;
            const PointSet all = covered_ | plane_.mask(lines[h]) | plane_.mask(joined);
            verified = !all.complement().any();
            break;
          }
          if (!verified || plane_.mask(joined).test(p)) {
            throw Error(ErrorCode::kInternalInconsistency, "joining line does not complete the cover");
          }
          target = std::move(joined);
          branches_.emplace_back("two-point-span");
        }
      }
      if (!target) throw Error(ErrorCode::kInternalInconsistency, "no completing line avoids P");
      said_yes_ = true;
      candidates_ = minus(plane_.mask(*target), covered_);
      out = Answer{Verdict::kNo, Constraint{Constraint::Kind::kInLine, *target}};
    }
  }
  if (!candidates_.any()) {
    throw Error(ErrorCode::kInternalInconsistency, "adversary candidate set emptied");
  }
  return out;
}

}  // namespace qsearch
