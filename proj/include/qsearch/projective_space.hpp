#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "qsearch/field.hpp"
#include "qsearch/point_set.hpp"
#include "qsearch/simd/kernels.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

inline constexpr std::size_t kDefaultPointCap = 1'000'000;

/// Reads QSEARCH_POINT_CAP, falling back to kDefaultPointCap.
std::size_t point_cap_from_env();

/// The point set of PG(n-1, q), enumerated once in lexicographic order, with
/// membership masks of subspaces computed over all points at a time.
///
/// Masks are memoized; the cache is internally synchronized so a space can be
/// shared by concurrent games.
class ProjectiveSpace {
 public:
  /// Throws TooLarge when the point count exceeds `point_cap`.
  ProjectiveSpace(std::shared_ptr<const Field> field, int n,
                  std::size_t point_cap = point_cap_from_env());

  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }
  int n() const { return n_; }
  unsigned q() const { return field_->q(); }
  std::size_t size() const { return points_.size(); }

  const ProjPoint& point(std::size_t i) const { return points_[i]; }
  const std::vector<ProjPoint>& points() const { return points_; }
  /// Index of a canonical point. Throws DimensionMismatch on length mismatch.
  std::size_t index_of(const ProjPoint& p) const;
  /// Index of the point spanned by a nonzero vector.
  std::size_t index_of_vector(const Vec& v) const;

  PointSet empty_set() const { return PointSet(size(), false); }
  PointSet full_set() const { return PointSet(size(), true); }

  /// Points contained in `s`.
  PointSet mask(const Subspace& s) const;
  /// Same as mask() but bypasses the cache and forces the given kernels.
  PointSet compute_mask(const Subspace& s, const simd::Kernels& kernels) const;

  /// All hyperplanes, sorted. Built on first use.
  const std::vector<Subspace>& hyperplanes() const;
  /// Indices into hyperplanes() of those containing point i, ascending.
  const std::vector<std::uint32_t>& hyperplanes_through_point(std::size_t i) const;

 private:
  std::uint64_t encode(const Vec& v) const;

  std::shared_ptr<const Field> field_;
  int n_;
  std::vector<ProjPoint> points_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  // Structure-of-arrays coordinates, padded to a multiple of simd::kBlock.
  std::vector<std::vector<std::uint16_t>> coords_;
  // Multiplication rows and addition table for the table-driven kernel (q <= 256).
  std::vector<std::vector<std::uint32_t>> mul_rows_;
  std::vector<std::uint32_t> add_table_;

  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Subspace, PointSet, SubspaceHash> cache_;
  mutable std::once_flag hyperplanes_once_;
  mutable std::vector<Subspace> hyperplanes_;
  mutable std::vector<std::vector<std::uint32_t>> through_point_;
};

}  // namespace qsearch
