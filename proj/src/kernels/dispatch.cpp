#include <atomic>
#include <cstdlib>
#include <string_view>

#include "fmcw/error.hpp"
#include "fmcw/kernels.hpp"
#include "kernels_impl.hpp"

namespace fmcw::kernels {

namespace {

constexpr KernelTable kScalar{
    detail::magnitude_scalar,        detail::squared_magnitude_scalar, detail::zero_exceeding_scalar,
    detail::caxpy_scalar,            detail::accumulate_scalar,        detail::apply_window_scalar,
    detail::window_accumulate_scalar,
};

#if defined(FMCW_HAVE_AVX2)
constexpr KernelTable kAvx2{
    detail::magnitude_avx2,        detail::squared_magnitude_avx2, detail::zero_exceeding_avx2,
    detail::caxpy_avx2,            detail::accumulate_avx2,        detail::apply_window_avx2,
    detail::window_accumulate_avx2,
};
#endif

Backend initial_backend() noexcept {
    if (const char* env = std::getenv("FMCW_KERNELS"); env != nullptr && std::string_view(env) == "scalar") {
        return Backend::Scalar;
    }
    return (avx2_table() != nullptr && cpu_supports_avx2()) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
    static std::atomic<Backend> backend{initial_backend()};
    return backend;
}

void check_length(std::size_t expected, std::size_t actual) {
    if (expected != actual) {
        throw Error(ErrorCode::DimensionMismatch, "kernel operand lengths differ");
    }
}

const double* raw(std::span<const Complex> z) { return reinterpret_cast<const double*>(z.data()); }
double* raw(std::span<Complex> z) { return reinterpret_cast<double*>(z.data()); }

}  // namespace

std::string_view to_string(Backend backend) {
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(FMCW_HAVE_AVX2)
    return &kAvx2;
#else
    return nullptr;
#endif
}

bool cpu_supports_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

Backend select_backend(Backend requested) noexcept {
    Backend effective = requested;
    if (requested == Backend::Avx2 && (avx2_table() == nullptr || !cpu_supports_avx2())) {
        effective = Backend::Scalar;
    }
    current().store(effective, std::memory_order_relaxed);
    return effective;
}

const KernelTable& table_for(Backend backend) noexcept {
    if (backend == Backend::Avx2 && avx2_table() != nullptr) return *avx2_table();
    return kScalar;
}

void magnitude(std::span<const Complex> z, std::span<double> out) {
    check_length(z.size(), out.size());
    table_for(active_backend()).magnitude(raw(z), out.data(), z.size());
}

void squared_magnitude(std::span<const Complex> z, std::span<double> out) {
    check_length(z.size(), out.size());
    table_for(active_backend()).squared_magnitude(raw(z), out.data(), z.size());
}

std::size_t zero_exceeding(std::span<Complex> z, std::span<const double> mag, std::span<const double> threshold) {
    check_length(z.size(), mag.size());
    check_length(z.size(), threshold.size());
    return table_for(active_backend()).zero_exceeding(raw(z), mag.data(), threshold.data(), z.size());
}

void caxpy(Complex s, std::span<const Complex> x, std::span<Complex> y) {
    check_length(x.size(), y.size());
    table_for(active_backend()).caxpy(s.real(), s.imag(), raw(x), raw(y), x.size());
}

void accumulate(std::span<const Complex> x, std::span<Complex> y) {
    check_length(x.size(), y.size());
    table_for(active_backend()).accumulate(raw(x), raw(y), x.size());
}

void apply_window(std::span<const Complex> x, std::span<const double> w, std::span<Complex> y) {
    check_length(x.size(), w.size());
    check_length(x.size(), y.size());
    table_for(active_backend()).apply_window(raw(x), w.data(), raw(y), x.size());
}

void window_accumulate(std::span<const Complex> x, std::span<const double> w, std::span<Complex> y) {
    check_length(x.size(), w.size());
    check_length(x.size(), y.size());
    table_for(active_backend()).window_accumulate(raw(x), w.data(), raw(y), x.size());
}

}  // namespace fmcw::kernels
