#pragma once

#include <filesystem>

#include "rawmamba/tensor.hpp"

namespace rawmamba {

/// Binary PPM (P6). Input (3,H,W) in [0,1]; values are clipped then rounded
/// to 8 bits.
void save_ppm(const std::filesystem::path& path, const Tensor& rgb);

/// Binary PGM (P5). Input (H,W) in [0,1].
void save_pgm(const std::filesystem::path& path, const Tensor& gray);

/// Grayscale values replicated into a P6 file; input (H,W) in [0,1].
void save_ppm_gray(const std::filesystem::path& path, const Tensor& gray);

}  // namespace rawmamba
