#include "doctest.h"

#include <cstring>
#include <vector>

#include "fmcw/kernels.hpp"
#include "fmcw/rng.hpp"
#include "fmcw/stft.hpp"

using namespace fmcw;
using namespace fmcw::kernels;

namespace {

std::vector<double> random_doubles(std::size_t n, std::uint64_t seed, double lo = -3.0, double hi = 3.0) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 513, 1000};

struct RestoreBackend {
    Backend saved = active_backend();
    ~RestoreBackend() { select_backend(saved); }
};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("avx2 variants are bit-identical to scalar") {
    const KernelTable* simd = avx2_table();
    if (simd == nullptr || !cpu_supports_avx2()) {
        MESSAGE("AVX2 unavailable; nothing to compare");
        return;
    }
    const KernelTable& ref = scalar_table();
    std::uint64_t seed = 1;
    for (std::size_t n : kLengths) {
        // offset by one double to exercise unaligned and odd starts
        for (std::size_t shift : {0, 1}) {
            CAPTURE(n);
            CAPTURE(shift);
            const auto z_buf = random_doubles(2 * n + shift, seed++);
            const double* z = z_buf.data() + shift;
            const auto w_buf = random_doubles(n + shift, seed++, 0.0, 1.0);
            const double* w = w_buf.data() + shift;

            std::vector<double> a(n), b(n);
            ref.magnitude(z, a.data(), n);
            simd->magnitude(z, b.data(), n);
            CHECK(bit_equal(a, b));
            ref.squared_magnitude(z, a.data(), n);
            simd->squared_magnitude(z, b.data(), n);
            CHECK(bit_equal(a, b));

            std::vector<double> y0 = random_doubles(2 * n, seed++);
            std::vector<double> y1 = y0;
            ref.caxpy(0.3, -1.7, z, y0.data(), n);
            simd->caxpy(0.3, -1.7, z, y1.data(), n);
            CHECK(bit_equal(y0, y1));
            ref.accumulate(z, y0.data(), n);
            simd->accumulate(z, y1.data(), n);
            CHECK(bit_equal(y0, y1));
            ref.apply_window(z, w, y0.data(), n);
            simd->apply_window(z, w, y1.data(), n);
            CHECK(bit_equal(y0, y1));
            ref.window_accumulate(z, w, y0.data(), n);
            simd->window_accumulate(z, w, y1.data(), n);
            CHECK(bit_equal(y0, y1));

            std::vector<double> mag(n);
            ref.magnitude(z, mag.data(), n);
            const auto thr = random_doubles(n, seed++, 0.0, 4.0);
            std::vector<double> z0(z, z + 2 * n), z1 = z0;
            const std::size_t c0 = ref.zero_exceeding(z0.data(), mag.data(), thr.data(), n);
            const std::size_t c1 = simd->zero_exceeding(z1.data(), mag.data(), thr.data(), n);
            CHECK(c0 == c1);
            CHECK(bit_equal(z0, z1));
        }
    }
}

TEST_CASE("scalar kernels against direct arithmetic") {
    const KernelTable& k = scalar_table();
    const std::vector<double> z{3.0, 4.0, -1.0, 0.0, 0.0, -2.0};
    std::vector<double> out(3);
    k.magnitude(z.data(), out.data(), 3);
    CHECK(out == std::vector<double>{5.0, 1.0, 2.0});
    k.squared_magnitude(z.data(), out.data(), 3);
    CHECK(out == std::vector<double>{25.0, 1.0, 4.0});

    std::vector<double> y{1.0, 1.0, 0.0, 0.0, 2.0, 0.0};
    k.caxpy(0.0, 1.0, z.data(), y.data(), 3);  // y += j z
    CHECK(y == std::vector<double>{-3.0, 4.0, 0.0, -1.0, 4.0, 0.0});

    std::vector<double> zz = z;
    const std::vector<double> mag{5.0, 1.0, 2.0};
    const std::vector<double> thr{4.0, 1.0, 3.0};
    CHECK(k.zero_exceeding(zz.data(), mag.data(), thr.data(), 3) == 1);
    CHECK(zz == std::vector<double>{0.0, 0.0, -1.0, 0.0, 0.0, -2.0});
}

TEST_CASE("backend selection does not change results") {
    RestoreBackend restore;
    Rng rng(9);
    std::vector<Complex> x(512);
    for (Complex& v : x) v = rng.complex_normal(1.0);

    select_backend(Backend::Scalar);
    CHECK(active_backend() == Backend::Scalar);
    const TfMatrix a = stft(x, StftConfig{});
    const auto ra = istft(a);

    const Backend got = select_backend(Backend::Avx2);
    if (got != Backend::Avx2) MESSAGE("AVX2 unavailable; comparing scalar with itself");
    const TfMatrix b = stft(x, StftConfig{});
    const auto rb = istft(b);
    CHECK(a.data == b.data);
    CHECK(ra == rb);
}

TEST_CASE("span wrappers check lengths") {
    std::vector<Complex> a(4), b(5);
    CHECK_THROWS(accumulate(a, b));
}

}
