#include <gtest/gtest.h>

#include <set>

#include "qsearch/adversary.hpp"
#include "qsearch/error.hpp"
#include "qsearch/rng.hpp"
#include "qsearch/searchers.hpp"

using namespace qsearch;

namespace {

// Mixes point queries on surviving candidates with splitting line queries, so
// every point-query rule of the adversary gets exercised.
class MixedSearcher final : public Searcher {
 public:
  MixedSearcher(const ProjectiveSpace& space, std::uint64_t seed, unsigned point_bias)
      : space_(space), tracker_(space), rng_(seed, 0x77), bias_(point_bias) {}

  std::string name() const override { return "mixed"; }
  Move next(const Transcript& t) override {
    const PointSet& c = tracker_.update(t);
    if (c.count() == 1) return Announce{space_.point(c.first())};
    std::vector<std::size_t> cand;
    for (std::size_t i = c.first(); i < space_.size(); i = c.next(i + 1)) cand.push_back(i);
    if (rng_.uniform(100) < bias_) {
      return Ask{span_of(space_.field(), space_.point(cand[rng_.uniform(cand.size())]))};
    }
    std::vector<const Subspace*> splitting;
    for (const Subspace& l : space_.hyperplanes()) {
      const std::size_t in = (c & space_.mask(l)).count();
      if (in > 0 && in < cand.size()) splitting.push_back(&l);
    }
    return Ask{*splitting[rng_.uniform(splitting.size())]};
  }

 private:
  const ProjectiveSpace& space_;
  CandidateTracker tracker_;
  CounterRng rng_;
  unsigned bias_;
};

std::vector<Subspace> lines_of(const ProjectiveSpace& plane, std::initializer_list<std::size_t> idx) {
  std::vector<Subspace> out;
  for (std::size_t i : idx) out.push_back(plane.hyperplanes()[i]);
  return out;
}

TEST(CoverExtension, EmptySetNeedsMoreThanOneLine) {
  for (unsigned q : {2u, 3u, 4u}) {
    ProjectiveSpace plane(Field::make_shared(q), 3);
    EXPECT_FALSE(cover_extension_check(plane, std::vector<Subspace>{}));
  }
}

TEST(CoverExtension, ConcurrentLinesCompleteWithTheLastPencilLine) {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    ProjectiveSpace plane(Field::make_shared(q), 3);
    const auto& through = plane.hyperplanes_through_point(0);
    std::vector<Subspace> ls;
    for (std::size_t i = 0; i < q; ++i) ls.push_back(plane.hyperplanes()[through[i]]);
    const auto completion = cover_extension_check(plane, ls);
    ASSERT_TRUE(completion);
    EXPECT_EQ(*completion, plane.hyperplanes()[through[q]]);
  }
}

TEST(CoverExtension, TriangleInPg23IsNotCompletable) {
  auto f = Field::make_shared(3);
  ProjectiveSpace plane(f, 3);
  std::vector<Subspace> triangle;
  for (int i = 0; i < 3; ++i) {
    Vec v(3, f->zero());
    v[i] = f->one();
    triangle.push_back(annihilator(*f, span_of(*f, normalize_point(*f, v))));
  }
  PointSet covered = plane.empty_set();
  for (const Subspace& l : triangle) covered |= plane.mask(l);
  EXPECT_EQ(covered.complement().count(), 4u);
  EXPECT_FALSE(cover_extension_check(plane, triangle));
}

TEST(CoverExtension, RejectsNonLines) {
  auto f = Field::make_shared(2);
  ProjectiveSpace plane(f, 3);
  EXPECT_THROW(cover_extension_check(plane, std::vector<Subspace>{span_of(*f, plane.point(0))}), Error);
  ProjectiveSpace solid(f, 4);
  EXPECT_THROW(cover_extension_check(solid, lines_of(solid, {0})), Error);
  EXPECT_THROW(AdversaryOracle{solid}, Error);
}

TEST(Adversary, ForcesTwoQMinusOneAgainstMixedSearchers) {
  std::set<std::string> fired;
  for (unsigned q : {2u, 3u, 4u, 5u, 7u}) {
    ProjectiveSpace plane(Field::make_shared(q), 3);
    for (unsigned bias : {0u, 30u, 70u, 100u}) {
      for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        MixedSearcher s(plane, seed, bias);
        AdversaryOracle adv(plane);
        const Transcript t = run_game(plane, s, adv, default_limit(plane));
        ASSERT_TRUE(t.identified());
        EXPECT_GE(t.count(), 2 * q - 1) << "q=" << q << " bias=" << bias << " seed=" << seed;
        const PointSet c = consistent_candidates(plane, t);
        EXPECT_TRUE(c.test(plane.index_of(adv.witness())));
        EXPECT_EQ(adv.branches().size(), t.count());
        for (const auto& b : adv.branches()) fired.insert(b);
      }
    }
  }
  std::string seen;
  for (const auto& b : fired) seen += b + " ";
  RecordProperty("branches", seen);
  for (const char* b : {"line-no", "line-yes", "point-to-line", "after-yes-no", "completion-avoiding-point"}) {
    EXPECT_TRUE(fired.count(b)) << b;
  }
}

TEST(Adversary, CandidatesNeverEmptyAgainstBuiltInSearchers) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    ProjectiveSpace plane(Field::make_shared(q), 3);
    for (const char* name : {"plane", "inductive", "two-round", "random-lines:11"}) {
      auto s = make_searcher(plane, name);
      AdversaryOracle adv(plane);
      const Transcript t = run_game(plane, *s, adv, default_limit(plane));
      EXPECT_TRUE(t.identified());
      EXPECT_GE(t.count(), 2 * q - 1) << name << " q=" << q;
      EXPECT_TRUE(adv.candidates().any());
    }
  }
}

TEST(Adversary, PointQueryFirstGetsAVolunteeredLine) {
  ProjectiveSpace plane(Field::make_shared(3), 3);
  AdversaryOracle adv(plane);
  Transcript t;
  const Answer a = adv.answer(t, span_of(plane.field(), plane.point(0)));
  EXPECT_EQ(a.verdict, Verdict::kNo);
  ASSERT_TRUE(a.volunteered);
  EXPECT_EQ(a.volunteered->kind, Constraint::Kind::kNotInLine);
  EXPECT_TRUE(plane.mask(a.volunteered->line).test(0));
  EXPECT_EQ(adv.branches().front(), "point-to-line");
}

TEST(Adversary, RepeatedYesLineIsAnsweredYes) {
  ProjectiveSpace plane(Field::make_shared(2), 3);
  AdversaryOracle adv(plane);
  Transcript t;
  const auto& through = plane.hyperplanes_through_point(0);
  const Subspace& first = plane.hyperplanes()[through[0]];
  const Subspace& second = plane.hyperplanes()[through[1]];
  EXPECT_EQ(adv.answer(t, first).verdict, Verdict::kNo);
  EXPECT_EQ(adv.answer(t, second).verdict, Verdict::kYes);
  EXPECT_EQ(adv.answer(t, second).verdict, Verdict::kYes);
  EXPECT_EQ(adv.branches(), (std::vector<std::string>{"line-no", "line-yes", "after-yes-yes"}));
}

}  // namespace
