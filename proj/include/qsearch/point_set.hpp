#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qsearch/simd/kernels.hpp"

namespace qsearch {

/// Fixed-size set of point indices packed 64 per word. Bits past size() stay clear.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t size, bool filled = false)
      : size_(size), words_((size + 63) / 64, filled ? ~std::uint64_t{0} : 0) {
    clear_tail();
  }

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  const std::uint64_t* data() const { return words_.data(); }
  std::uint64_t* data() { return words_.data(); }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  std::size_t count() const { return simd::active().popcount_words(words_.data(), words_.size()); }
  bool any() const {
    for (auto w : words_) {
      if (w != 0) return true;
    }
    return false;
  }
  /// Index of the lowest member, or size() when empty.
  std::size_t first() const { return next(0); }
  std::size_t next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t w = from / 64;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from % 64));
    while (true) {
      if (bits != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      if (++w == words_.size()) return size_;
      bits = words_[w];
    }
  }

  PointSet& operator&=(const PointSet& o) {
    simd::active().and_words(words_.data(), o.words_.data(), words_.size());
    return *this;
  }
  /// this &= ~o
  PointSet& subtract(const PointSet& o) {
    simd::active().andnot_words(words_.data(), o.words_.data(), words_.size());
    return *this;
  }
  PointSet& operator|=(const PointSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  PointSet complement() const {
    PointSet r(*this);
    for (auto& w : r.words_) w = ~w;
    r.clear_tail();
    return r;
  }
  bool is_subset_of(const PointSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

  void clear_tail() {
    if (size_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
inline PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
inline PointSet minus(PointSet a, const PointSet& b) { return a.subtract(b); }

}  // namespace qsearch
