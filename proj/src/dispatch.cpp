#include "dress/kernels.hpp"
#include "kernels_detail.hpp"

namespace dress {

namespace {

const StepKernel kScalar{"scalar", 1, &detail::step_scalar_impl};

#if defined(__x86_64__) || defined(_M_X64)
const StepKernel kAvx2{"avx2", 4, &detail::step_avx2_impl};
bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2");
}
#elif defined(__aarch64__)
const StepKernel kNeon{"neon", 2, &detail::step_neon_impl};
#endif

}  // namespace

const StepKernel& scalar_kernel() { return kScalar; }

const StepKernel& preferred_kernel() {
#if defined(__x86_64__) || defined(_M_X64)
    static const StepKernel& best = cpu_has_avx2() ? kAvx2 : kScalar;
    return best;
#elif defined(__aarch64__)
    return kNeon;  // baseline on aarch64
#else
    return kScalar;
#endif
}

const StepKernel* kernel_by_name(const std::string& name) {
    if (name == "scalar") return &kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2" && cpu_has_avx2()) return &kAvx2;
#elif defined(__aarch64__)
    if (name == "neon") return &kNeon;
#endif
    return nullptr;
}

std::vector<const StepKernel*> available_kernels() {
    std::vector<const StepKernel*> out{&kScalar};
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) out.push_back(&kAvx2);
#elif defined(__aarch64__)
    out.push_back(&kNeon);
#endif
    return out;
}

}  // namespace dress
