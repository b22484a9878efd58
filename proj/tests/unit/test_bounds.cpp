#include <gtest/gtest.h>

#include <cmath>

#include "qsearch/bounds.hpp"
#include "qsearch/error.hpp"

using namespace qsearch;

namespace {

TEST(Bounds, AdaptiveBracket) {
  const AdaptiveBounds b = adaptive_bounds(3, 3);
  EXPECT_NEAR(b.lower.value, std::log2(13.0), 1e-12);
  EXPECT_EQ(b.lower_ceil, 4u);
  EXPECT_EQ(b.upper.exact, "5");
  const AdaptiveBounds c = adaptive_bounds(4, 5);
  EXPECT_NEAR(c.lower.value, std::log2(156.0), 1e-12);
  EXPECT_EQ(c.upper.value, 13.0);
  for (int n = 2; n <= 12; ++n) {
    const AdaptiveBounds d = adaptive_bounds(n, 2);
    EXPECT_EQ(d.lower_ceil, static_cast<std::uint64_t>(n));
    EXPECT_EQ(d.upper.value, n);
  }
}

TEST(Bounds, BoundedQueryValues) {
  EXPECT_NEAR(bounded_query_lower(3, 2).full.value, 2.458, 5e-4);
  EXPECT_NEAR(bounded_query_lower(3, 4).full.value, 5.25, 5e-3);
  const BoundedQueryBound k = bounded_query_lower(4, 3);
  EXPECT_EQ(k.big_m, 40);
  EXPECT_EQ(k.small_m, 13);
  // Simplified form evaluated directly.
  const double simp = 3 * 3 * std::log2(3.0) / (2 + std::log2(80.0 / 26.0));
  EXPECT_NEAR(k.simplified.value, simp, 1e-12);
}

TEST(Bounds, BoundedQueryIncreasesWithN) {
  for (unsigned q : {3u, 4u, 5u, 7u, 9u}) {
    double prev = 0;
    for (int n = 2; n <= 12; ++n) {
      const double v = bounded_query_lower(n, q).full.value;
      EXPECT_GT(v, 0);
      EXPECT_GT(v, prev) << n << " " << q;
      prev = v;
    }
  }
}

TEST(Bounds, NonadaptiveUppers) {
  const NonadaptiveBounds a = nonadaptive_bounds(3, 3);
  EXPECT_EQ(a.upper_random.exact, "18");
  EXPECT_EQ(a.upper_explicit.exact, "6");
  EXPECT_EQ(a.headline_upper.exact, "6");
  const NonadaptiveBounds b = nonadaptive_bounds(4, 2);
  EXPECT_EQ(b.upper_random.exact, "16");
  EXPECT_EQ(b.headline_upper.exact, "4");
  const NonadaptiveBounds c = nonadaptive_bounds(5, 7);
  EXPECT_EQ(c.upper_random.exact, "70");
  EXPECT_EQ(c.upper_explicit.exact, "55");
  const NonadaptiveBounds d = nonadaptive_bounds(20, 31);
  EXPECT_EQ(d.headline_upper.tag, "random-construction-upper");
}

TEST(Bounds, PlaneSpecials) {
  const PlaneSpecials s3 = plane_specials(3);
  EXPECT_EQ(s3.tau2_best.tag, "tau2-trivial-lower");
  EXPECT_EQ(s3.semi_resolving_lower->exact, "15/4");
  EXPECT_FALSE(s3.exact_m3q);
  const PlaneSpecials s9 = plane_specials(9);
  EXPECT_EQ(s9.tau2_best.exact, "26");
  EXPECT_FALSE(s9.exact_m3q);
  const PlaneSpecials s121 = plane_specials(121);
  EXPECT_EQ(s121.exact_m3q->exact, "264");
  EXPECT_EQ(s121.semi_resolving_lower->exact, "264");
  const PlaneSpecials s7 = plane_specials(7);
  EXPECT_EQ(s7.tau2_best.tag, "tau2-prime-lower");
  EXPECT_EQ(s7.tau2_best.exact, "20");
  const PlaneSpecials s27 = plane_specials(27);
  EXPECT_EQ(s27.tau2_upper->exact, "80");
  EXPECT_EQ(s27.m3q_upper->exact, "79");
  EXPECT_LE(s27.semi_resolving_lower->value, s27.m3q_upper->value);
  const PlaneSpecials s8 = plane_specials(8);
  EXPECT_EQ(s8.tau2_best.tag, "tau2-odd-power-lower");
  EXPECT_NEAR(s8.tau2_best.value, 18 + std::cbrt(0.5) * 4, 1e-12);
  EXPECT_FALSE(plane_specials(2).semi_resolving_lower);
}

TEST(Bounds, SquareOrderIdentity) {
  for (unsigned r : {11u, 13u, 16u, 17u, 19u, 23u, 25u, 27u, 29u, 31u}) {
    const unsigned q = r * r;
    const PlaneSpecials s = plane_specials(q);
    ASSERT_TRUE(s.exact_m3q);
    EXPECT_EQ(s.exact_m3q->value, s.tau2_best.value - 2);
  }
}

TEST(Bounds, ReportAndCsv) {
  const BoundsReport r = bounds_report(3, 3);
  ASSERT_TRUE(r.plane);
  EXPECT_FALSE(bounds_report(4, 3).plane);
  const std::string row = bounds_csv_row(r);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), static_cast<long>(bounds_csv_header().size() - 1));
  EXPECT_EQ(row.substr(0, 8), "3,3,13,3");
}

TEST(Bounds, Preconditions) {
  EXPECT_THROW(adaptive_bounds(1, 3), Error);
  EXPECT_THROW(bounded_query_lower(3, 6), Error);
  EXPECT_THROW(plane_specials(10), Error);
}

}  // namespace
