#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qsearch {

/// Counter-based generator: output i is a fixed 64-bit mix of (key, i), with the
/// key derived from a seed and a stream id. Identical (seed, stream) pairs give
/// identical sequences on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();
  /// Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);
  std::uint64_t counter() const { return counter_; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(i))]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qsearch
