#include "fmcw/window.hpp"

#include <cmath>
#include <string>

#include "fmcw/error.hpp"
#include "fmcw/rfconfig.hpp"

namespace fmcw {

std::string_view to_string(WindowKind kind) {
    return kind == WindowKind::Hann ? "hann" : "rectangular";
}

WindowKind window_kind_from_string(std::string_view name) {
    if (name == "hann") return WindowKind::Hann;
    if (name == "rectangular" || name == "rect") return WindowKind::Rectangular;
    throw Error(ErrorCode::InvalidConfig, "unknown window '" + std::string(name) + "'");
}

std::vector<double> make_window(WindowKind kind, std::size_t length) {
    std::vector<double> w(length, 1.0);
    if (kind == WindowKind::Hann) {
        const double step = 2.0 * kPi / static_cast<double>(length);
        for (std::size_t n = 0; n < length; ++n) {
            w[n] = 0.5 - 0.5 * std::cos(step * static_cast<double>(n));
        }
    }
    return w;
}

}  // namespace fmcw
