#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "excnn/grid.hpp"

namespace excnn {

/// Grayscale template image; intensities drive the obstacle coupling map.
struct TemplateImage {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> intensity;   // row-major

    TemplateImage() = default;
    TemplateImage(int r, int c, std::uint8_t fill = 255)
        : rows(r), cols(c), intensity(static_cast<std::size_t>(r) * c, fill) {}

    std::uint8_t& at(int i, int j) { return intensity[static_cast<std::size_t>(i) * cols + j]; }
    std::uint8_t at(int i, int j) const { return intensity[static_cast<std::size_t>(i) * cols + j]; }

    bool operator==(const TemplateImage&) const = default;
};

/// Reads a P2 or P5 PGM with maxval 255. P2 and P5 encodings of the same
/// data parse to identical images. Malformed input raises ParseError with
/// the byte offset of the failure.
TemplateImage load_pgm(const std::string& path);
TemplateImage parse_pgm(const std::string& data);

void save_pgm(const TemplateImage& img, const std::string& path, bool binary = true);

/// Voltage field rendered with the 0-1.8 V range mapped linearly onto
/// 0-255 intensity; values outside the range clamp.
TemplateImage render_state(const GridState& state);

}  // namespace excnn
