#include <gtest/gtest.h>

#include <set>

#include "qsearch/error.hpp"
#include "qsearch/separating.hpp"

using namespace qsearch;

namespace {

QuerySet make_set(int n, unsigned q, std::vector<Subspace> queries) {
  QuerySet s;
  s.n = n;
  s.q = q;
  s.queries = std::move(queries);
  return s;
}

TEST(Separating, CoordinateTriangleSeparatesFanoPlane) {
  auto f = Field::make_shared(2);
  ProjectiveSpace plane(f, 3);
  const QuerySet s = make_set(3, 2, {coordinate_hyperplane(*f, 3, 0), coordinate_hyperplane(*f, 3, 1),
                                     coordinate_hyperplane(*f, 3, 2)});
  EXPECT_TRUE(is_separating(plane, s).separating);
  const SignatureTable t = signatures(plane, s);
  EXPECT_EQ(t.distinct(), 7u);
}

TEST(Separating, WitnessIsLexFirstCollidingPair) {
  auto f = Field::make_shared(3);
  ProjectiveSpace plane(f, 3);
  const QuerySet s = make_set(3, 3, {coordinate_hyperplane(*f, 3, 0)});
  const SeparationVerdict v = is_separating(plane, s);
  ASSERT_FALSE(v.separating);
  ASSERT_TRUE(v.witness);
  // (0,0,1) and (0,1,0) both lie on x0 = 0.
  EXPECT_EQ(v.witness->first, 0u);
  EXPECT_EQ(v.witness->second, 1u);
}

TEST(Separating, ExplicitConstructionSizes) {
  for (auto [n, q, size] : std::vector<std::tuple<int, unsigned, std::size_t>>{
           {3, 3, 6}, {4, 3, 10}, {4, 2, 4}, {3, 2, 3}, {5, 7, 55}, {3, 4, 9}}) {
    auto f = Field::make_shared(q);
    const QuerySet s = explicit_construction(*f, n);
    EXPECT_EQ(s.size(), size) << n << " " << q;
    if (gaussian_binomial(n, 1, q) < 5000) {
      ProjectiveSpace space(f, n);
      EXPECT_TRUE(is_separating(space, s).separating);
    }
    for (const Subspace& h : s.queries) EXPECT_EQ(h.k(), n - 1);
  }
}

TEST(Separating, RandomConstructionIsDeterministic) {
  ProjectiveSpace space(Field::make_shared(3), 4);
  const RandomConstruction a = random_construction(space, 42);
  const RandomConstruction b = random_construction(space, 42);
  EXPECT_EQ(a.set.queries, b.set.queries);
  EXPECT_EQ(a.attempts, b.attempts);
  EXPECT_LE(a.set.size(), 24u);
  EXPECT_TRUE(is_separating(space, a.set).separating);
  EXPECT_EQ(a.bundles.size(), 8u);
  const RandomConstruction c = random_construction(space, 43);
  EXPECT_NE(a.set.queries, c.set.queries);
}

TEST(Separating, RandomConstructionPreconditions) {
  ProjectiveSpace line(Field::make_shared(3), 2);
  EXPECT_THROW(random_construction(line, 1), Error);
  ProjectiveSpace plane(Field::make_shared(3), 3);
  EXPECT_THROW(random_construction(plane, 1, 0), Error);
}

TEST(Separating, ClaimFormulaValues) {
  EXPECT_EQ(claim_count_formula(4, 2), 7);
  EXPECT_EQ(claim_count_formula(4, 3), 25);
  for (unsigned q : {2u, 3u, 4u, 5u, 7u}) EXPECT_EQ(claim_count_formula(3, q), q - 1);
  auto f = Field::make_shared(2);
  ProjectiveSpace space(f, 4);
  EXPECT_EQ(claim_count_bruteforce(*f, 4, space.point(0), space.point(5)), 7u);
  EXPECT_THROW(claim_count_bruteforce(*f, 4, space.point(0), space.point(0)), Error);
}

TEST(Separating, ReduceToMinimalDropsRedundantQueries) {
  auto f = Field::make_shared(3);
  ProjectiveSpace plane(f, 3);
  QuerySet s = explicit_construction(*f, 3);
  for (const Subspace& h : plane.hyperplanes()) s.queries.push_back(h);
  const QuerySet m = reduce_to_minimal(plane, s);
  EXPECT_TRUE(is_separating(plane, m).separating);
  for (std::size_t i = 0; i < m.size(); ++i) {
    QuerySet less = m;
    less.queries.erase(less.queries.begin() + static_cast<long>(i));
    EXPECT_FALSE(is_separating(plane, less).separating);
  }
}

TEST(Separating, PointsToLinesKeepsSize) {
  auto f = Field::make_shared(3);
  ProjectiveSpace plane(f, 3);
  // Five coordinate-ish lines plus a point that finishes the separation.
  QuerySet s = explicit_construction(*f, 3);
  s.queries.pop_back();
  for (const ProjPoint& p : plane.points()) {
    QuerySet t = s;
    t.queries.push_back(span_of(*f, p));
    if (!is_separating(plane, t).separating) continue;
    const QuerySet lines = points_to_lines(plane, t);
    EXPECT_TRUE(is_separating(plane, lines).separating);
    EXPECT_LE(lines.size(), t.size());
    for (const Subspace& l : lines.queries) EXPECT_EQ(l.k(), 2);
    std::set<Subspace> distinct(lines.queries.begin(), lines.queries.end());
    EXPECT_EQ(distinct.size(), lines.size());
  }
  QuerySet bad = make_set(3, 3, {coordinate_hyperplane(*f, 3, 0)});
  try {
    points_to_lines(plane, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSeparating);
  }
}

TEST(Separating, BruteForceMinimum) {
  ProjectiveSpace fano(Field::make_shared(2), 3);
  const MinimumSearch m = brute_force_minimum(fano, 6, true);
  EXPECT_EQ(m.size, 3);
  EXPECT_TRUE(is_separating(fano, m.witness).separating);
  ProjectiveSpace pg32(Field::make_shared(2), 4);
  EXPECT_EQ(brute_force_minimum(pg32, 6, true).size, 4);
  try {
    brute_force_minimum(fano, 2, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kExhausted);
  }
}

TEST(Separating, ValidateRejectsForeignQueries) {
  auto f = Field::make_shared(3);
  ProjectiveSpace plane(f, 3);
  QuerySet s = make_set(4, 3, {coordinate_hyperplane(*f, 4, 0)});
  EXPECT_THROW(validate(plane, s), Error);
  QuerySet whole = make_set(3, 3, {whole_space(*f, 3)});
  EXPECT_THROW(validate(plane, whole), Error);
}

}  // namespace
