#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsearch/subspace.hpp"

namespace qsearch {

/// One bound figure. `exact` holds the value as an integer or reduced
/// fraction "a/b" when it is rational; irrational values carry only `value`.
struct BoundValue {
  std::string tag;
  double value = 0.0;
  std::optional<std::string> exact;

  friend bool operator==(const BoundValue&, const BoundValue&) = default;
};

struct AdaptiveBounds {
  BigInt points;             ///< number of projective points, [n 1]_q
  BoundValue lower;          ///< log2 of the point count
  std::uint64_t lower_ceil;  ///< ceiling of `lower`, the usable integer bound
  BoundValue upper;          ///< (q-1)(n-1)+1
};

struct BoundedQueryBound {
  BigInt big_m;           ///< [n 1]_q
  BigInt small_m;         ///< [n-1 1]_q
  BoundValue full;        ///< (log M / log(eM/m)) * M/m
  BoundValue simplified;  ///< (n-1) q log q / (2 + log((q^n-1)/(q^(n-1)-1)))
};

struct NonadaptiveBounds {
  BoundedQueryBound bounded_query;
  BoundValue upper_explicit;  ///< n + C(n,2)(q-2)
  BoundValue upper_random;    ///< 2nq
  BoundValue headline_upper;  ///< the smaller of the two
};

/// Bounds particular to the plane (n = 3).
struct PlaneSpecials {
  /// Every lower bound on the double blocking number that applies to q.
  std::vector<BoundValue> tau2_lowers;
  /// The largest of `tau2_lowers`.
  BoundValue tau2_best;
  /// min{2q + q/4 - 3, tau2_best - 2}; absent for q < 3.
  std::optional<BoundValue> semi_resolving_lower;
  /// 2q + 2 sqrt(q), for square q >= 121.
  std::optional<BoundValue> exact_m3q;
  /// Upper bound on the double blocking number for q = r^d with r an odd prime
  /// power and d >= 3 odd, using the smallest such d.
  std::optional<BoundValue> tau2_upper;
  /// tau2_upper - 1, the resulting upper bound on the separating minimum.
  std::optional<BoundValue> m3q_upper;
};

struct BoundsReport {
  int n = 0;
  unsigned q = 0;
  AdaptiveBounds adaptive;
  NonadaptiveBounds nonadaptive;
  std::optional<PlaneSpecials> plane;
};

/// Throws Precondition for n < 2 and NotAPrimePower for bad q.
AdaptiveBounds adaptive_bounds(int n, unsigned q);
BoundedQueryBound bounded_query_lower(int n, unsigned q);
NonadaptiveBounds nonadaptive_bounds(int n, unsigned q);
/// Plane specials for PG(2,q); q must be a prime power.
PlaneSpecials plane_specials(unsigned q);
/// Full report; `plane` is filled only for n = 3.
BoundsReport bounds_report(int n, unsigned q);

/// log2 of a positive big integer.
double log2_big(const BigInt& x);

/// Column order of `bounds_csv_row`.
const std::vector<std::string>& bounds_csv_header();
std::string bounds_csv_row(const BoundsReport& r);

}  // namespace qsearch
