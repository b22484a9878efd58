#pragma once

#include <cstddef>
#include <cstdint>

// Inner loops over packed point sets. Every kernel has a scalar reference
// implementation; x86-64 builds also carry AVX2 variants that are selected at
// runtime when the CPU supports them. The two must agree bit for bit.

namespace qsearch::simd {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);

/// Points are processed in blocks of 64; coordinate arrays must be readable up
/// to the next multiple of 64 past `count`.
inline constexpr std::size_t kBlock = 64;

struct Kernels {
  Isa isa;

  /// dst[i] &= src[i]
  void (*and_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  /// dst[i] &= ~src[i]
  void (*andnot_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  std::size_t (*popcount_words)(const std::uint64_t* src, std::size_t words);

  /// For a prime field GF(p): clears bit i of `out` unless sum_j h[j]*coords[j][i] = 0 mod p.
  /// Requires n * (p-1)^2 < 2^31.
  void (*zero_dot_prime)(const std::uint16_t* const* coords, const std::uint16_t* h, int n,
                         unsigned p, std::size_t count, std::uint64_t* out);

  /// Table-driven variant for any field: products come from mul_rows[j][x] (the
  /// row of the multiplication table for h[j]) and sums from add[a * q + b].
  void (*zero_dot_table)(const std::uint16_t* const* coords, const std::uint32_t* const* mul_rows,
                         const std::uint32_t* add, unsigned q, int n, std::size_t count,
                         std::uint64_t* out);
};

const Kernels& scalar_kernels();
/// nullptr when the binary or CPU lacks AVX2.
const Kernels* avx2_kernels();

/// Kernels chosen for this process: AVX2 when available unless the
/// QSEARCH_SIMD environment variable is set to "scalar".
const Kernels& active();

}  // namespace qsearch::simd
