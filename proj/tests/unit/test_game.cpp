#include <gtest/gtest.h>

#include "qsearch/error.hpp"
#include "qsearch/game.hpp"
#include "qsearch/searchers.hpp"

using namespace qsearch;

namespace {

Transcript play(const ProjectiveSpace& space, const std::string& searcher, const ProjPoint& p) {
  auto s = make_searcher(space, searcher);
  FixedOracle oracle(space, p);
  return run_game(space, *s, oracle, default_limit(space));
}

TEST(Game, SearchersIdentifyEveryPoint) {
  for (auto [n, q] : std::vector<std::pair<int, unsigned>>{{2, 5}, {3, 2}, {3, 4}, {4, 3}, {5, 2}, {3, 8}}) {
    ProjectiveSpace space(Field::make_shared(q), n);
    std::vector<std::string> names = {"inductive", "two-round"};
    if (n == 3) {
      names.push_back("plane");
      names.push_back("random-lines:3");
    }
    for (const std::string& name : names) {
      for (const ProjPoint& p : space.points()) {
        const Transcript t = play(space, name, p);
        ASSERT_TRUE(t.identified()) << name;
        EXPECT_EQ(std::get<Identified>(t.outcome).point, p) << name;
      }
    }
  }
}

TEST(Game, TwoRoundFirstRoundIgnoresAnswers) {
  ProjectiveSpace space(Field::make_shared(5), 4);
  const Transcript ref = play(space, "two-round", space.point(0));
  for (const ProjPoint& p : space.points()) {
    const Transcript t = play(space, "two-round", p);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(t.entries[i].query, ref.entries[i].query);
  }
}

TEST(Game, PlaneSearcherWorstCaseIsTwoQMinusOne) {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    ProjectiveSpace space(Field::make_shared(q), 3);
    std::size_t worst = 0;
    for (const ProjPoint& p : space.points()) worst = std::max(worst, play(space, "plane", p).count());
    EXPECT_EQ(worst, 2 * q - 1);
  }
}

TEST(Game, UnknownSearcherIsRejected) {
  ProjectiveSpace space(Field::make_shared(3), 3);
  EXPECT_THROW(make_searcher(space, "greedy"), Error);
  EXPECT_THROW(make_searcher(space, "random-lines:x"), Error);
}

class EagerSearcher final : public Searcher {
 public:
  explicit EagerSearcher(ProjPoint p) : p_(std::move(p)) {}
  std::string name() const override { return "eager"; }
  Move next(const Transcript&) override { return Announce{p_}; }

 private:
  ProjPoint p_;
};

// Asks every line through the first point.
class PencilSearcher final : public Searcher {
 public:
  explicit PencilSearcher(const ProjectiveSpace& space) : space_(space) {}
  std::string name() const override { return "pencil"; }
  Move next(const Transcript& t) override {
    const auto& through = space_.hyperplanes_through_point(0);
    return Ask{space_.hyperplanes()[through[t.count() % through.size()]]};
  }

 private:
  const ProjectiveSpace& space_;
};

class LiarOracle final : public Oracle {
 public:
  std::string name() const override { return "liar"; }
  Answer answer(const Transcript&, const Subspace&) override { return Answer{Verdict::kNo, {}}; }
};

TEST(Game, PrematureAnnouncementIsRejected) {
  ProjectiveSpace space(Field::make_shared(2), 3);
  EagerSearcher s(space.point(0));
  FixedOracle o(space, space.point(0));
  try {
    run_game(space, s, o, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadAnnounce);
  }
}

TEST(Game, InconsistentOracleIsDetected) {
  ProjectiveSpace space(Field::make_shared(2), 3);
  PencilSearcher s(space);
  LiarOracle o;
  try {
    run_game(space, s, o, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistentOracle);
  }
}

TEST(Game, LimitAbortsTheGame) {
  ProjectiveSpace space(Field::make_shared(3), 3);
  auto s = make_plane_searcher(space);
  FixedOracle o(space, space.point(12));
  const Transcript t = run_game(space, *s, o, 2);
  ASSERT_TRUE(std::holds_alternative<Aborted>(t.outcome));
  EXPECT_EQ(t.count(), 2u);
  EXPECT_EQ(std::get<Aborted>(t.outcome).reason, "query limit 2 reached");
}

TEST(Game, ConsistentCandidatesFollowTheAnswers) {
  ProjectiveSpace space(Field::make_shared(4), 3);
  const ProjPoint p = space.point(9);
  const Transcript t = play(space, "plane", p);
  const PointSet c = consistent_candidates(space, t);
  EXPECT_EQ(c.count(), 1u);
  EXPECT_TRUE(c.test(9));
  EXPECT_EQ(FixedOracle(space, p).name(), "fixed:" + point_to_string(p));
}

}  // namespace
