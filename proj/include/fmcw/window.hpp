#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace fmcw {

enum class WindowKind {
    Rectangular,
    Hann,
};

std::string_view to_string(WindowKind kind);
WindowKind window_kind_from_string(std::string_view name);

/// Periodic (DFT-even) window of the given length: Hann is
/// 0.5 - 0.5 cos(2 pi n / L), which overlap-adds to a constant at hop L/4.
std::vector<double> make_window(WindowKind kind, std::size_t length);

}  // namespace fmcw
