#include "fmcw/frame_io.hpp"

#include <fmt/format.h>

#include <array>
#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "fmcw/error.hpp"

namespace fmcw {

namespace {

void put_le(std::vector<char>& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<char>(bits & 0xffU));
        bits >>= 8;
    }
}

double get_le(const char* p) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | static_cast<unsigned char>(p[b]);
    return std::bit_cast<double>(bits);
}

}  // namespace

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& data, std::uint64_t config_hash,
                       std::string_view kind) {
    if (kind.empty() || kind.find_first_of(" \n\t") != std::string_view::npos) {
        throw Error(ErrorCode::InvalidConfig, "matrix kind must be a single non-empty word");
    }
    std::vector<char> bytes;
    const std::string header =
        fmt::format("RADARFRAME rows={} cols={} config_hash={:016x} kind={}\n", data.rows(), data.cols(), config_hash, kind);
    bytes.assign(header.begin(), header.end());
    bytes.reserve(header.size() + 16 * data.size());
    for (const Complex& v : data.flat()) {
        put_le(bytes, v.real());
        put_le(bytes, v.imag());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, fmt::format("cannot open '{}' for writing", path.string()));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, fmt::format("write to '{}' failed", path.string()));
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open '{}' for reading", path.string()));
    std::string header;
    std::getline(in, header);

    std::size_t rows = 0;
    std::size_t cols = 0;
    unsigned long long hash = 0;
    std::array<char, 65> kind{};
    if (std::sscanf(header.c_str(), "RADARFRAME rows=%zu cols=%zu config_hash=%16llx kind=%64s", &rows, &cols, &hash,
                    kind.data()) != 4) {
        throw Error(ErrorCode::Io, fmt::format("'{}' is not a RADARFRAME file", path.string()));
    }
    const std::size_t count = rows * cols;
    std::vector<char> payload(16 * count);
    in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
        throw Error(ErrorCode::Io, fmt::format("'{}' is truncated", path.string()));
    }
    MatrixFile file{ComplexMatrix(rows, cols), hash, kind.data()};
    auto flat = file.data.flat();
    for (std::size_t i = 0; i < count; ++i) {
        flat[i] = {get_le(&payload[16 * i]), get_le(&payload[16 * i + 8])};
    }
    return file;
}

}  // namespace fmcw
