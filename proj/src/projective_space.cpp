#include "qsearch/projective_space.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <string>

namespace qsearch {
namespace {

constexpr std::size_t kMaskCacheLimit = 1U << 15;

}  // namespace

std::size_t point_cap_from_env() {
  if (const char* env = std::getenv("QSEARCH_POINT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultPointCap;
}

ProjectiveSpace::ProjectiveSpace(std::shared_ptr<const Field> field, int n, std::size_t point_cap)
    : field_(std::move(field)), n_(n) {
  if (n < 1) throw Error(ErrorCode::kPrecondition, "ambient dimension must be positive");
  const BigInt count = gaussian_binomial(n, 1, field_->q());
  if (count > point_cap) {
    throw Error(ErrorCode::kTooLarge, "PG(" + std::to_string(n - 1) + "," +
                                          std::to_string(field_->q()) + ") has " +
                                          count.str() + " points, cap is " +
                                          std::to_string(point_cap));
  }
  points_.reserve(static_cast<std::size_t>(count));
  for_each_point(*field_, n, [&](const ProjPoint& p) { points_.push_back(p); });
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    index_.emplace(encode(points_[i].coords), static_cast<std::uint32_t>(i));
  }

  const std::size_t padded = (points_.size() + simd::kBlock - 1) / simd::kBlock * simd::kBlock;
  coords_.assign(static_cast<std::size_t>(n), std::vector<std::uint16_t>(padded + 8, 0));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (int j = 0; j < n; ++j) coords_[j][i] = points_[i].coords[j].idx;
  }

  const unsigned q = field_->q();
  if (!field_->is_prime() && q <= 256) {
    mul_rows_.assign(q, std::vector<std::uint32_t>(q));
    add_table_.resize(static_cast<std::size_t>(q) * q);
    for (unsigned a = 0; a < q; ++a) {
      for (unsigned b = 0; b < q; ++b) {
        const Elem ea{static_cast<std::uint16_t>(a)};
        const Elem eb{static_cast<std::uint16_t>(b)};
        mul_rows_[a][b] = field_->mul(ea, eb).idx;
        add_table_[static_cast<std::size_t>(a) * q + b] = field_->add(ea, eb).idx;
      }
    }
  }
}

std::uint64_t ProjectiveSpace::encode(const Vec& v) const {
  std::uint64_t code = 0;
  for (Elem e : v) code = code * field_->q() + e.idx;
  return code;
}

std::size_t ProjectiveSpace::index_of(const ProjPoint& p) const {
  if (static_cast<int>(p.n()) != n_) {
    throw Error(ErrorCode::kDimensionMismatch, "point length differs from ambient dimension");
  }
  auto it = index_.find(encode(p.coords));
  if (it == index_.end()) throw Error(ErrorCode::kPrecondition, "point is not canonical");
  return it->second;
}

std::size_t ProjectiveSpace::index_of_vector(const Vec& v) const {
  return index_of(normalize_point(*field_, v));
}

PointSet ProjectiveSpace::compute_mask(const Subspace& s, const simd::Kernels& kernels) const {
  if (s.n() != n_) throw Error(ErrorCode::kDimensionMismatch, "subspace ambient dimension");
  PointSet out = full_set();
  const Subspace checks = annihilator(*field_, s);
  const std::size_t count = points_.size();
  std::vector<const std::uint16_t*> cols(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) cols[j] = coords_[j].data();

  const Field& f = *field_;
  const unsigned p = f.p();
  const bool prime_fits = f.is_prime() && static_cast<std::uint64_t>(n_) * (p - 1) * (p - 1) <
                                               (std::uint64_t{1} << 31);
  for (int r = 0; r < checks.k(); ++r) {
    auto h = checks.row(r);
    if (prime_fits) {
      std::vector<std::uint16_t> hv(static_cast<std::size_t>(n_));
      for (int j = 0; j < n_; ++j) hv[j] = h[j].idx;
      kernels.zero_dot_prime(cols.data(), hv.data(), n_, p, count, out.data());
    } else if (!mul_rows_.empty()) {
      std::vector<const std::uint32_t*> rows(static_cast<std::size_t>(n_));
      for (int j = 0; j < n_; ++j) rows[j] = mul_rows_[h[j].idx].data();
      kernels.zero_dot_table(cols.data(), rows.data(), add_table_.data(), f.q(), n_, count,
                             out.data());
    } else {
      for (std::size_t i = 0; i < count; ++i) {
        if (!dot(f, h, points_[i].coords).is_zero()) out.reset(i);
      }
    }
  }
  return out;
}

PointSet ProjectiveSpace::mask(const Subspace& s) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
  }
  PointSet m = compute_mask(s, simd::active());
  std::unique_lock lock(mutex_);
  if (cache_.size() >= kMaskCacheLimit) cache_.clear();
  cache_.emplace(s, m);
  return m;
}

const std::vector<Subspace>& ProjectiveSpace::hyperplanes() const {
  std::call_once(hyperplanes_once_, [this] {
    hyperplanes_.reserve(points_.size());
    for (const ProjPoint& p : points_) {
      hyperplanes_.push_back(annihilator(*field_, span_of(*field_, p)));
    }
    std::sort(hyperplanes_.begin(), hyperplanes_.end());
    through_point_.assign(points_.size(), {});
    for (std::size_t h = 0; h < hyperplanes_.size(); ++h) {
      const PointSet m = compute_mask(hyperplanes_[h], simd::active());
      for (std::size_t i = m.first(); i < m.size(); i = m.next(i + 1)) {
        through_point_[i].push_back(static_cast<std::uint32_t>(h));
      }
    }
  });
  return hyperplanes_;
}

const std::vector<std::uint32_t>& ProjectiveSpace::hyperplanes_through_point(std::size_t i) const {
  hyperplanes();
  return through_point_[i];
}

}  // namespace qsearch
