#include "qsearch/rng.hpp"

namespace qsearch {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed ^ mix(stream + kGolden))) {}

std::uint64_t CounterRng::next() {
  ++counter_;
  return mix(key_ + counter_ * kGolden);
}

std::uint64_t CounterRng::uniform(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  while (true) {
    const std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

}  // namespace qsearch
