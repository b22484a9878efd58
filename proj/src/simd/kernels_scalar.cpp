#include <bit>

#include "qsearch/simd/kernels.hpp"

namespace qsearch::simd {
namespace {

void and_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= src[i];
}

void andnot_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= ~src[i];
}

std::size_t popcount_words(const std::uint64_t* src, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += static_cast<std::size_t>(std::popcount(src[i]));
  return c;
}

void zero_dot_prime(const std::uint16_t* const* coords, const std::uint16_t* h, int n, unsigned p,
                    std::size_t count, std::uint64_t* out) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t s = 0;
    for (int j = 0; j < n; ++j) s += std::uint32_t{h[j]} * coords[j][i];
    if (s % p != 0) out[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
}

void zero_dot_table(const std::uint16_t* const* coords, const std::uint32_t* const* mul_rows,
                    const std::uint32_t* add, unsigned q, int n, std::size_t count,
                    std::uint64_t* out) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t acc = 0;
    for (int j = 0; j < n; ++j) acc = add[acc * q + mul_rows[j][coords[j][i]]];
    if (acc != 0) out[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::kScalar, &and_words, &andnot_words, &popcount_words,
                         &zero_dot_prime, &zero_dot_table};
  return k;
}

}  // namespace qsearch::simd
