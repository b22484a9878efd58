#include <cstdlib>
#include <string_view>

#include "qsearch/simd/kernels.hpp"

namespace qsearch::simd {

const Kernels& active() {
  static const Kernels& chosen = [] () -> const Kernels& {
    const char* env = std::getenv("QSEARCH_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace qsearch::simd
