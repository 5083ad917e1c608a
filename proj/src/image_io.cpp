#include "rawmamba/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rawmamba/serialize.hpp"

namespace rawmamba {

namespace {

uint8_t to_byte(double v) {
    double c = std::clamp(v, 0.0, 1.0);
    return static_cast<uint8_t>(std::lround(c * 255.0));
}

}  // namespace

void save_ppm(const std::filesystem::path& path, const Tensor& rgb) {
    if (rgb.rank() != 3 || rgb.dim(0) != 3)
        throw ShapeError("save_ppm expects (3,H,W), got " + shape_str(rgb.shape()));
    int64_t h = rgb.dim(1), w = rgb.dim(2);
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    for (int64_t y = 0; y < h; ++y)
        for (int64_t x = 0; x < w; ++x)
            for (int64_t c = 0; c < 3; ++c)
                out.push_back(static_cast<char>(to_byte(rgb.at({c, y, x}))));
    atomic_write_file(path, out);
}

void save_pgm(const std::filesystem::path& path, const Tensor& gray) {
    if (gray.rank() != 2)
        throw ShapeError("save_pgm expects (H,W), got " + shape_str(gray.shape()));
    int64_t h = gray.dim(0), w = gray.dim(1);
    std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    for (int64_t i = 0; i < gray.size(); ++i) out.push_back(static_cast<char>(to_byte(gray[i])));
    atomic_write_file(path, out);
}

void save_ppm_gray(const std::filesystem::path& path, const Tensor& gray) {
    if (gray.rank() != 2)
        throw ShapeError("save_ppm_gray expects (H,W), got " + shape_str(gray.shape()));
    int64_t h = gray.dim(0), w = gray.dim(1);
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    for (int64_t i = 0; i < gray.size(); ++i) {
        char b = static_cast<char>(to_byte(gray[i]));
        out.push_back(b);
        out.push_back(b);
        out.push_back(b);
    }
    atomic_write_file(path, out);
}

}  // namespace rawmamba
