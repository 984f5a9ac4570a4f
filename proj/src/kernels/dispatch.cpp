#include "vorwave/kernels.hpp"

namespace vorwave::kernels {

#if defined(VORWAVE_HAVE_AVX2)
const Backend* avx2_backend();
#endif
#if defined(VORWAVE_HAVE_NEON)
const Backend* neon_backend();
#endif

namespace {

bool avx2_usable() {
#if defined(VORWAVE_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

bool neon_usable() {
#if defined(VORWAVE_HAVE_NEON)
    return true; // baseline on aarch64
#else
    return false;
#endif
}

const Backend* best_backend() {
#if defined(VORWAVE_HAVE_AVX2)
    if (avx2_usable()) return avx2_backend();
#endif
#if defined(VORWAVE_HAVE_NEON)
    if (neon_usable()) return neon_backend();
#endif
    return &scalar_backend();
}

const Backend*& current() {
    static const Backend* b = best_backend();
    return b;
}

} // namespace

const Backend& active() { return *current(); }

bool select(std::string_view name) {
    if (name == "auto") {
        current() = best_backend();
        return true;
    }
    if (name == "scalar") {
        current() = &scalar_backend();
        return true;
    }
#if defined(VORWAVE_HAVE_AVX2)
    if (name == "avx2" && avx2_usable()) {
        current() = avx2_backend();
        return true;
    }
#endif
#if defined(VORWAVE_HAVE_NEON)
    if (name == "neon" && neon_usable()) {
        current() = neon_backend();
        return true;
    }
#endif
    return false;
}

std::vector<std::string> available() {
    std::vector<std::string> out{"scalar"};
    if (avx2_usable()) out.emplace_back("avx2");
    if (neon_usable()) out.emplace_back("neon");
    return out;
}

} // namespace vorwave::kernels
