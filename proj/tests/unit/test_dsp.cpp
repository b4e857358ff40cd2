#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fmcw/detector.hpp"
#include "fmcw/error.hpp"
#include "fmcw/fft.hpp"
#include "fmcw/rfconfig.hpp"
#include "fmcw/rng.hpp"
#include "fmcw/stft.hpp"
#include "fmcw/window.hpp"

using namespace fmcw;

namespace {

std::vector<Complex> white(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Complex> x(n);
    for (Complex& v : x) v = rng.complex_normal(1.0);
    return x;
}

std::vector<Complex> tone(std::size_t n, double cycles_per_sample) {
    std::vector<Complex> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = std::polar(1.0, 2.0 * kPi * cycles_per_sample * static_cast<double>(k));
    return x;
}

std::vector<Complex> naive_dft(const std::vector<Complex>& x, double sign) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double re = 0, im = 0;
        for (std::size_t t = 0; t < n; ++t) {
            const long double ang = sign * 2.0L * 3.14159265358979323846264338327950288L *
                                    static_cast<long double>((k * t) % n) / static_cast<long double>(n);
            re += x[t].real() * std::cos(ang) - x[t].imag() * std::sin(ang);
            im += x[t].real() * std::sin(ang) + x[t].imag() * std::cos(ang);
        }
        out[k] = Complex(static_cast<double>(re), static_cast<double>(im));
    }
    return out;
}

double energy(std::span<const Complex> x) {
    double e = 0.0;
    for (Complex v : x) e += std::norm(v);
    return e;
}

double rel_error(std::span<const Complex> a, std::span<const Complex> b) {
    double num = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) num += std::norm(a[i] - b[i]);
    return std::sqrt(num / energy(b));
}

}  // namespace

TEST_SUITE("dsp") {

TEST_CASE("windows") {
    const auto hann = make_window(WindowKind::Hann, 8);
    CHECK(hann[0] == 0.0);
    CHECK(hann[4] == doctest::Approx(1.0));
    CHECK(hann[2] == doctest::Approx(0.5));
    CHECK(hann[1] == doctest::Approx(hann[7]));
    const auto rect = make_window(WindowKind::Rectangular, 5);
    CHECK(rect == std::vector<double>(5, 1.0));
    CHECK(window_kind_from_string("hann") == WindowKind::Hann);
    CHECK_THROWS_AS(window_kind_from_string("kaiser"), Error);

    // squared Hann overlap-adds to 3/2 at hop W/4
    const auto w = make_window(WindowKind::Hann, 64);
    for (std::size_t phase = 0; phase < 16; ++phase) {
        double sum = 0.0;
        for (std::size_t n = phase; n < 64; n += 16) sum += w[n] * w[n];
        CHECK(sum == doctest::Approx(1.5));
    }
}

TEST_CASE("fft matches a direct DFT") {
    for (std::size_t n : {1, 2, 3, 7, 16, 64, 100, 128, 512}) {
        CAPTURE(n);
        const auto x = white(n, n);
        for (auto [dir, sign] : {std::pair{FftDirection::Forward, -1.0}, std::pair{FftDirection::Inverse, 1.0}}) {
            std::vector<Complex> y = x;
            fft_inplace(y, dir);
            const auto ref = naive_dft(x, sign);
            CHECK(rel_error(y, ref) < 1e-12);
        }
    }
}

TEST_CASE("fft is reproducible across buffer alignment") {
    const auto x = white(512, 5);
    std::vector<Complex> a = x;
    fft_inplace(a, FftDirection::Forward);
    std::vector<Complex> padded(513);
    std::copy(x.begin(), x.end(), padded.begin() + 1);
    std::span<Complex> shifted(padded.data() + 1, 512);
    fft_inplace(shifted, FftDirection::Forward);
    CHECK(std::equal(a.begin(), a.end(), shifted.begin()));

    std::vector<Complex> out(512);
    fft(x, out, FftDirection::Forward);
    CHECK(out == a);
}

TEST_CASE("stft dimensions") {
    const TfMatrix tf = stft(white(512, 1), StftConfig{});
    CHECK(tf.frequency_rows() == 64);
    CHECK(tf.time_frames() == 32);
    CHECK(stft_frame_count(513, 16) == 33);

    const TfMatrix zero = stft(std::vector<Complex>(512), StftConfig{});
    CHECK(std::all_of(zero.data.flat().begin(), zero.data.flat().end(), [](Complex v) { return v == 0.0; }));
}

TEST_CASE("stft input validation") {
    CHECK_THROWS_AS(stft(white(32, 1), StftConfig{}), Error);
    try {
        stft(white(32, 1), StftConfig{});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SignalTooShort);
    }
    StftConfig bad;
    bad.hop = 65;
    CHECK_THROWS_AS(bad.validate(), Error);
    StftConfig gap;
    gap.window = WindowKind::Hann;
    gap.window_length = 4;
    gap.hop = 4;  // Hann(4) at hop 4 leaves sample 0 of each frame with zero weight
    CHECK_THROWS_AS(gap.validate(), Error);

    TfMatrix tf = stft(white(512, 1), StftConfig{});
    tf.data = ComplexMatrix(64, 31);
    try {
        istft(tf);
        FAIL("expected InconsistentDimensions");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InconsistentDimensions);
    }
}

TEST_CASE("tone energy concentrates in its row") {
    // e^{-j 2 pi 0.125 n} sits on row 56 = -8 mod 64.
    const auto x = tone(512, -0.125);
    auto row_share = [&](const TfMatrix& tf, std::initializer_list<std::size_t> rows) {
        double in_rows = 0.0;
        for (std::size_t r : rows) {
            for (std::size_t c = 0; c < tf.time_frames(); ++c) in_rows += std::norm(tf.data(r, c));
        }
        return in_rows / (tf_energy(tf) * 64.0);
    };
    StftConfig rect;
    rect.window = WindowKind::Rectangular;
    rect.hop = 32;
    const TfMatrix r = stft(x, rect);
    CHECK(row_share(r, {56}) >= 0.95);
    rect.hop = 64;  // the last frames would leave the tail uncovered
    CHECK_THROWS_AS(stft(x, rect), Error);

    const TfMatrix h = stft(x, StftConfig{});
    // Hann splits a bin-centred tone over three rows in ratio 1:4:1 of energy
    CHECK(row_share(h, {56}) == doctest::Approx(4.0 / 6.0).epsilon(1e-6));
    CHECK(row_share(h, {55, 56, 57}) >= 0.95);
}

TEST_CASE("perfect reconstruction") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto x = white(512, seed);
        const auto y = istft(stft(x, StftConfig{}));
        CHECK(rel_error(y, x) < 1e-10);
    }
    // other lengths and configurations
    for (std::size_t n : {64, 100, 333, 1000}) {
        for (StftConfig cfg : {StftConfig{}, StftConfig{32, 8, WindowKind::Hann}, StftConfig{16, 8, WindowKind::Rectangular},
                               StftConfig{64, 32, WindowKind::Hann}}) {
            if (n < cfg.window_length) continue;
            const auto x = white(n, n + cfg.hop);
            CHECK(rel_error(istft(stft(x, cfg)), x) < 1e-10);
        }
    }
    const TfMatrix zero{ComplexMatrix(64, 32), StftConfig{}, 512};
    const auto z = istft(zero);
    CHECK(std::all_of(z.begin(), z.end(), [](Complex v) { return v == 0.0; }));
}

TEST_CASE("stft Parseval consistency") {
    const StftConfig cfg;
    const auto w = make_window(cfg.window, cfg.window_length);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto x = white(512, 100 + seed);
        // weighted time-domain energy of the conjugate-reflected extension
        const std::ptrdiff_t last = 511;
        const Complex head = x.front() / std::conj(x.front());
        const Complex tail = x.back() / std::conj(x.back());
        auto extended = [&](std::ptrdiff_t n) {
            if (n < 0) return std::conj(x[static_cast<std::size_t>(-n)]) * head;
            if (n > last) return std::conj(x[static_cast<std::size_t>(2 * last - n)]) * tail;
            return x[static_cast<std::size_t>(n)];
        };
        double expected = 0.0;
        for (std::size_t c = 0; c < 32; ++c) {
            for (std::size_t m = 0; m < 64; ++m) {
                const auto n = static_cast<std::ptrdiff_t>(c * 16 + m) - 32;
                expected += w[m] * w[m] * std::norm(extended(n));
            }
        }
        const double got = tf_energy(stft(x, cfg));
        CHECK(std::abs(got - expected) <= 1e-9 * expected);
    }
}

TEST_CASE("edge padding keeps tone frequency") {
    // a pure tone is continued exactly past both ends, so edge frames look like interior ones
    const auto x = tone(512, 0.2);
    const TfMatrix tf = stft(x, StftConfig{});
    for (std::size_t r = 0; r < 64; ++r) {
        for (std::size_t c = 1; c < 32; ++c) {
            CHECK(std::abs(tf.data(r, c)) == doctest::Approx(std::abs(tf.data(r, 0))).epsilon(1e-9));
        }
    }
}

TEST_CASE("removing unrelated rows keeps tone power") {
    const auto x = tone(512, 8.0 / 64.0);
    TfMatrix tf = stft(x, StftConfig{});
    for (std::size_t r = 20; r <= 40; ++r) {
        for (std::size_t c = 0; c < tf.time_frames(); ++c) tf.data(r, c) = 0.0;
    }
    const auto y = istft(tf);
    CHECK(std::abs(10.0 * std::log10(energy(y) / energy(x))) < 0.1);
}

TEST_CASE("median") {
    std::vector<double> odd{5, 1, 3};
    CHECK(median_inplace(odd) == 3.0);
    std::vector<double> even{4, 1, 3, 2};
    CHECK(median_inplace(even) == 2.5);
}

TEST_CASE("CA-CFAR") {
    DetectorConfig cfar;
    cfar.kind = DetectorKind::CellAveragingCfar;

    const std::vector<double> constant(100, 0.7);
    for (double t : detector_threshold(constant, cfar)) CHECK(t == doctest::Approx(7.0));

    std::vector<double> spike(512, 0.0);
    spike[256] = 100.0;
    const auto thr = detector_threshold(spike, cfar);
    CHECK(thr[256] == 0.0);
    CHECK(spike[256] > thr[256]);
    for (std::size_t i = 252; i <= 260; ++i) CHECK(thr[i] == 0.0);
    // cells 5..20 away see the spike in one training window of 16 of 32 cells
    CHECK(thr[256 + 5] == doctest::Approx(10.0 * 100.0 / 32.0));
    CHECK(thr[256 - 20] == doctest::Approx(10.0 * 100.0 / 32.0));
    CHECK(thr[256 + 21] == 0.0);

    // shrinking windows at the edges
    std::vector<double> ramp(64);
    std::iota(ramp.begin(), ramp.end(), 0.0);
    const auto edge = detector_threshold(ramp, cfar);
    double mean0 = 0.0;
    for (int j = 5; j <= 20; ++j) mean0 += j;
    CHECK(edge[0] == doctest::Approx(10.0 * mean0 / 16.0));
    double mean3 = 0.0;
    for (int j = 8; j <= 23; ++j) mean3 += j;
    CHECK(edge[3] == doctest::Approx(10.0 * mean3 / 16.0));
    double mean6 = 0.0 + 1.0;  // leading side keeps cells 0 and 1
    for (int j = 11; j <= 26; ++j) mean6 += j;
    CHECK(edge[6] == doctest::Approx(10.0 * mean6 / 18.0));

    // one training cell per side, nothing available for a single-element vector
    DetectorConfig tiny = cfar;
    tiny.cfar.training_cells = 1;
    tiny.cfar.guard_cells = 0;
    const std::vector<double> one{3.0};
    CHECK(std::isinf(detector_threshold(one, tiny)[0]));
}

TEST_CASE("CA-CFAR scale equivariance") {
    DetectorConfig cfar;
    cfar.kind = DetectorKind::CellAveragingCfar;
    Rng rng(4);
    std::vector<double> mag(300);
    for (double& m : mag) m = std::abs(rng.complex_normal(1.0));
    const auto a = detector_threshold(mag, cfar);
    std::vector<double> scaled = mag;
    for (double& m : scaled) m *= 4.0;
    const auto b = detector_threshold(scaled, cfar);
    for (std::size_t i = 0; i < mag.size(); ++i) {
        CHECK(b[i] == doctest::Approx(4.0 * a[i]));
        CHECK((mag[i] > a[i]) == (scaled[i] > b[i]));
    }
}

TEST_CASE("median/MAD threshold") {
    DetectorConfig mad;
    mad.mad.k = 5.0;
    Rng rng(12);
    std::vector<double> mag(100000);
    for (double& m : mag) m = std::abs(rng.complex_normal(1.0));
    const auto thr = detector_threshold(mag, mad);
    std::size_t above = 0;
    for (std::size_t i = 0; i < mag.size(); ++i) above += mag[i] > thr[i];
    CHECK(static_cast<double>(above) / static_cast<double>(mag.size()) < 0.01);
    CHECK(std::all_of(thr.begin(), thr.end(), [&](double t) { return t == thr[0]; }));

    const std::vector<double> small{1.0, 2.0, 3.0, 4.0, 100.0};
    // median 3, deviations {2, 1, 0, 1, 97} -> MAD 1
    CHECK(detector_threshold(small, mad)[0] == doctest::Approx(3.0 + 5.0 * 1.4826));
}

TEST_CASE("detector errors") {
    CHECK_THROWS_AS(detector_threshold(std::vector<double>{}, DetectorConfig{}), Error);
    DetectorConfig bad;
    bad.cfar.scale_factor = 1.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = DetectorConfig{};
    bad.mad.k = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK(detector_kind_from_string("ca_cfar") == DetectorKind::CellAveragingCfar);
    CHECK_THROWS_AS(detector_kind_from_string("os_cfar"), Error);
}

}
