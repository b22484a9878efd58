#include "qsearch/simd/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#include <immintrin.h>
#define QSEARCH_HAVE_AVX2 1
#endif

namespace qsearch::simd {

#ifdef QSEARCH_HAVE_AVX2
namespace {

#define QSEARCH_AVX2 __attribute__((target("avx2,popcnt")))

QSEARCH_AVX2 void and_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    const __m256i a = _mm256_loadu_si256(d);
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(d, _mm256_and_si256(a, b));
  }
  for (; i < words; ++i) dst[i] &= src[i];
}

QSEARCH_AVX2 void andnot_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    const __m256i a = _mm256_loadu_si256(d);
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(d, _mm256_andnot_si256(b, a));
  }
  for (; i < words; ++i) dst[i] &= ~src[i];
}

QSEARCH_AVX2 std::size_t popcount_words(const std::uint64_t* src, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(src[i]));
  return c;
}

// Exact zero test of eight 32-bit sums modulo p: the sums are below 2^31, so
// s - round(s / p) * p is computed exactly in double precision.
QSEARCH_AVX2 unsigned nonzero_mod_mask(__m256i sums, __m256d inv_p, __m256d p) {
  const __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(sums));
  const __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(sums, 1));
  const __m256d rlo = _mm256_sub_pd(
      lo, _mm256_mul_pd(_mm256_round_pd(_mm256_mul_pd(lo, inv_p), _MM_FROUND_TO_NEAREST_INT), p));
  const __m256d rhi = _mm256_sub_pd(
      hi, _mm256_mul_pd(_mm256_round_pd(_mm256_mul_pd(hi, inv_p), _MM_FROUND_TO_NEAREST_INT), p));
  const __m256d zero = _mm256_setzero_pd();
  const unsigned zlo = static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(rlo, zero, _CMP_NEQ_OQ)));
  const unsigned zhi = static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(rhi, zero, _CMP_NEQ_OQ)));
  return zlo | (zhi << 4U);
}

QSEARCH_AVX2 void zero_dot_prime(const std::uint16_t* const* coords, const std::uint16_t* h, int n,
                                 unsigned p, std::size_t count, std::uint64_t* out) {
  const __m256d inv_p = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
  for (std::size_t base = 0; base < count; base += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (int j = 0; j < n; ++j) {
      if (h[j] == 0) continue;
      const __m128i raw = _mm_loadu_si128(reinterpret_cast<const __m128i*>(coords[j] + base));
      const __m256i x = _mm256_cvtepu16_epi32(raw);
      acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(x, _mm256_set1_epi32(h[j])));
    }
    std::uint64_t bad = nonzero_mod_mask(acc, inv_p, pd);
    const std::size_t valid = count - base < 8 ? count - base : 8;
    bad &= (std::uint64_t{1} << valid) - 1;
    out[base / 64] &= ~(bad << (base % 64));
  }
}

QSEARCH_AVX2 void zero_dot_table(const std::uint16_t* const* coords,
                                 const std::uint32_t* const* mul_rows, const std::uint32_t* add,
                                 unsigned q, int n, std::size_t count, std::uint64_t* out) {
  const __m256i qv = _mm256_set1_epi32(static_cast<int>(q));
  for (std::size_t base = 0; base < count; base += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (int j = 0; j < n; ++j) {
      const __m128i raw = _mm_loadu_si128(reinterpret_cast<const __m128i*>(coords[j] + base));
      const __m256i x = _mm256_cvtepu16_epi32(raw);
      const __m256i prod =
          _mm256_i32gather_epi32(reinterpret_cast<const int*>(mul_rows[j]), x, 4);
      const __m256i at = _mm256_add_epi32(_mm256_mullo_epi32(acc, qv), prod);
      acc = _mm256_i32gather_epi32(reinterpret_cast<const int*>(add), at, 4);
    }
    const __m256i nz = _mm256_cmpeq_epi32(acc, _mm256_setzero_si256());
    std::uint64_t bad =
        ~static_cast<std::uint64_t>(_mm256_movemask_ps(_mm256_castsi256_ps(nz))) & 0xffU;
    const std::size_t valid = count - base < 8 ? count - base : 8;
    bad &= (std::uint64_t{1} << valid) - 1;
    out[base / 64] &= ~(bad << (base % 64));
  }
}

}  // namespace

const Kernels* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  static const Kernels k{Isa::kAvx2, &and_words, &andnot_words, &popcount_words,
                         &zero_dot_prime, &zero_dot_table};
  return supported ? &k : nullptr;
}

#else

const Kernels* avx2_kernels() { return nullptr; }

#endif

}  // namespace qsearch::simd
