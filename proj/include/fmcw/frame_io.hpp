#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "fmcw/matrix.hpp"

namespace fmcw {

/// Flat binary matrix file: one ASCII header line
///   RADARFRAME rows=<M> cols=<N> config_hash=<16 hex> kind=<word>\n
/// followed by rows*cols complex values, row-major, each as two
/// little-endian IEEE-754 doubles (re, im).
struct MatrixFile {
    ComplexMatrix data;
    std::uint64_t config_hash = 0;
    std::string kind;
};

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& data, std::uint64_t config_hash,
                       std::string_view kind);
MatrixFile read_matrix_file(const std::filesystem::path& path);

}  // namespace fmcw
