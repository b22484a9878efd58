#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsearch/projective_space.hpp"
#include "qsearch/rng.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

struct Provenance {
  enum class Kind { kExplicit, kRandom, kUser };
  Kind kind = Kind::kUser;
  std::uint64_t seed = 0;
  int l = 0;

  std::string label() const;
};

/// A candidate separating system: proper nontrivial subspaces of GF(q)^n.
struct QuerySet {
  int n = 0;
  unsigned q = 0;
  std::vector<Subspace> queries;
  Provenance provenance;

  std::size_t size() const { return queries.size(); }
};

/// Throws DimensionMismatch / Precondition when a query does not belong to the space.
void validate(const ProjectiveSpace& space, const QuerySet& set);

/// Membership bit vectors of every point over the queries, in query order.
class SignatureTable {
 public:
  SignatureTable(std::size_t points, std::size_t queries)
      : points_(points), queries_(queries), words_((queries + 63) / 64),
        bits_(points * words_, 0) {}

  std::size_t points() const { return points_; }
  std::size_t queries() const { return queries_; }
  std::span<const std::uint64_t> signature(std::size_t point) const {
    return {bits_.data() + point * words_, words_};
  }
  bool bit(std::size_t point, std::size_t query) const {
    return (bits_[point * words_ + query / 64] >> (query % 64)) & 1U;
  }
  void set(std::size_t point, std::size_t query) {
    bits_[point * words_ + query / 64] |= std::uint64_t{1} << (query % 64);
  }
  std::size_t distinct() const;

 private:
  std::size_t points_;
  std::size_t queries_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

SignatureTable signatures(const ProjectiveSpace& space, const QuerySet& set);

struct SeparationVerdict {
  bool separating = false;
  /// Lexicographically first pair of point indices with equal signatures.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

SeparationVerdict is_separating(const ProjectiveSpace& space, const QuerySet& set);
SeparationVerdict is_separating(const SignatureTable& table);

/// The n coordinate hyperplanes followed by, for each pair i < j, the q-2
/// hyperplanes {v : v_j = lambda_k v_i} for the first q-2 nonzero lambda_k in index order.
QuerySet explicit_construction(const Field& f, int n);
/// The hyperplane {v : v_j = lambda v_i} (0-based coordinates, lambda != 0).
Subspace ratio_hyperplane(const Field& f, int n, int i, int j, Elem lambda);
Subspace coordinate_hyperplane(const Field& f, int n, int i);

struct RandomBundle {
  Subspace base;                   // the sampled (n-2)-subspace
  std::vector<Subspace> queried;   // q hyperplanes through it, lexicographically last dropped
};

struct RandomConstruction {
  QuerySet set;
  std::vector<RandomBundle> bundles;
  int attempts = 0;  // attempts used, including the successful one
};

inline constexpr int kDefaultMaxRetries = 64;

/// Uniform (n-2)-subspace: random (n-2) x n matrices redrawn until full rank.
Subspace sample_subspace(const Field& f, int n, int k, CounterRng& rng);

/// 2n random pencils of q hyperplanes each, resampled until separating.
/// Throws Precondition for n < 3 and RetriesExhausted after max_retries failures.
RandomConstruction random_construction(const ProjectiveSpace& space, std::uint64_t seed,
                                       int max_retries = kDefaultMaxRetries);

/// (q-1)[n-1, n-3]_q - (q-2)[n-2, n-4]_q with out-of-range binomials taken as 0.
BigInt claim_count_formula(int n, unsigned q);

/// Number of (n-2)-subspaces whose full pencil of q+1 hyperplanes fails to
/// separate u and v, by exhaustive enumeration.
std::uint64_t claim_count_bruteforce(const Field& f, int n, const ProjPoint& u, const ProjPoint& v);

struct ClaimSweep {
  std::size_t pairs = 0;
  std::uint64_t min_count = 0;
  std::uint64_t max_count = 0;
  std::size_t subspaces = 0;
};

/// Brute-force count for every unordered pair of points at once.
ClaimSweep claim_count_all_pairs(const ProjectiveSpace& space);

/// Reduces a separating system of PG(2,q) to a minimal one (dropping redundant
/// queries scanned from the back) and then replaces each point query by a line.
/// Throws NotSeparating, UniquenessViolation.
QuerySet points_to_lines(const ProjectiveSpace& space, const QuerySet& set);

/// Removes redundant queries, scanning from the last towards the first.
QuerySet reduce_to_minimal(const ProjectiveSpace& space, const QuerySet& set);

struct MinimumSearch {
  int size = 0;
  QuerySet witness;
  std::uint64_t nodes = 0;
};

/// Smallest separating system drawn from hyperplanes (or all proper nontrivial
/// subspaces), by size-ordered subset search. Throws Exhausted.
MinimumSearch brute_force_minimum(const ProjectiveSpace& space, int max_size,
                                  bool restrict_to_hyperplanes);

}  // namespace qsearch
