#pragma once

#include <filesystem>
#include <string>

#include "rawmamba/tensor.hpp"

namespace rawmamba {

/// RMT1 tensor container:
///   bytes 0-3  magic "RMT1"
///   byte  4    version (1)
///   byte  5    dtype code (1 = f32, 2 = f64)
///   bytes 6-7  reserved, zero
///   u32 LE     rank
///   rank x u64 LE extents
///   payload    row-major, little-endian
enum class Dtype : uint8_t { f32 = 1, f64 = 2 };

void save_rmt(const std::filesystem::path& path, const Tensor& t, Dtype dtype = Dtype::f64);
Tensor load_rmt(const std::filesystem::path& path);

/// Serialize to an in-memory byte string (used by tests and atomic writes).
std::string rmt_bytes(const Tensor& t, Dtype dtype = Dtype::f64);
Tensor rmt_parse(const std::string& bytes, const std::string& origin = "<memory>");

/// Write bytes to a temp file in the same directory, then rename into place.
void atomic_write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace rawmamba
