#include "qsearch/game.hpp"

namespace qsearch {

std::size_t default_limit(const ProjectiveSpace& space) { return space.size(); }

void apply_entry(const ProjectiveSpace& space, const Entry& e, PointSet& candidates) {
  const PointSet m = space.mask(e.query);
  if (e.answer.verdict == Verdict::kYes) {
    candidates &= m;
  } else {
    candidates.subtract(m);
  }
  if (e.answer.volunteered) {
    const PointSet line = space.mask(e.answer.volunteered->line);
    if (e.answer.volunteered->kind == Constraint::Kind::kInLine) {
      candidates &= line;
    } else {
      candidates.subtract(line);
    }
  }
}

PointSet consistent_candidates(const ProjectiveSpace& space, const Transcript& t) {
  PointSet c = space.full_set();
  for (const Entry& e : t.entries) apply_entry(space, e, c);
  return c;
}

Transcript run_game(const ProjectiveSpace& space, Searcher& searcher, Oracle& oracle,
                    std::size_t limit) {
  if (limit < 1) throw Error(ErrorCode::kPrecondition, "query limit must be positive");
  Transcript t;
  t.n = space.n();
  t.q = space.q();
  t.searcher = searcher.name();
  t.oracle = oracle.name();
  PointSet candidates = space.full_set();

  while (true) {
    Move move = searcher.next(t);
    if (auto* announce = std::get_if<Announce>(&move)) {
      const std::size_t count = candidates.count();
      const std::size_t idx = space.index_of(announce->point);
      if (count != 1 || !candidates.test(idx)) {
        throw Error(ErrorCode::kBadAnnounce,
                    t.searcher + " announced " + point_to_string(announce->point) + " with " +
                        std::to_string(count) + " candidates remaining after " +
                        std::to_string(t.count()) + " queries");
      }
      t.outcome = Identified{announce->point};
      return t;
    }
    if (t.count() >= limit) {
      t.outcome = Aborted{"query limit " + std::to_string(limit) + " reached"};
      return t;
    }
    Subspace query = std::move(std::get<Ask>(move).query);
    if (query.n() != space.n() || query.k() < 1 || query.k() >= space.n()) {
      throw Error(ErrorCode::kPrecondition, t.searcher + " asked an improper subspace");
    }
    Answer a = oracle.answer(t, query);
    t.entries.push_back(Entry{std::move(query), std::move(a)});
    apply_entry(space, t.entries.back(), candidates);
    if (!candidates.any()) {
      throw Error(ErrorCode::kInconsistentOracle,
                  t.oracle + " left no consistent point after query " + std::to_string(t.count()));
    }
  }
}

FixedOracle::FixedOracle(const ProjectiveSpace& space, ProjPoint marked)
    : space_(space), marked_(std::move(marked)) {
  space_.index_of(marked_);
}

std::string FixedOracle::name() const { return "fixed:" + point_to_string(marked_); }

Answer FixedOracle::answer(const Transcript&, const Subspace& query) {
  return Answer{contains(space_.field(), query, marked_) ? Verdict::kYes : Verdict::kNo, {}};
}

}  // namespace qsearch
