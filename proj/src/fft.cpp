#include "fmcw/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "fmcw/error.hpp"

namespace fmcw {

namespace {

// FFTW's planner is not thread-safe; execution through the new-array
// interface is. Plans are made with FFTW_UNALIGNED so the same codelets run
// for every buffer, which keeps results independent of heap alignment.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t length, FftDirection direction) {
        const auto key = std::make_pair(length, direction);
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        std::vector<Complex> scratch(length);
        auto* buffer = reinterpret_cast<fftw_complex*>(scratch.data());
        const int sign = direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(length), buffer, buffer, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) {
            throw Error(ErrorCode::InvalidConfig, "FFTW could not plan length " + std::to_string(length));
        }
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, FftDirection>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft_inplace(std::span<Complex> data, FftDirection direction) {
    if (data.empty()) return;
    fftw_plan plan = cache().get(data.size(), direction);
    auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buffer, buffer);
}

void fft(std::span<const Complex> in, std::span<Complex> out, FftDirection direction) {
    if (in.size() != out.size()) throw Error(ErrorCode::DimensionMismatch, "fft input/output lengths differ");
    if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
    fft_inplace(out, direction);
}

}  // namespace fmcw
