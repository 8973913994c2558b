#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "graphheat/graph.hpp"
#include "graphheat/spectral.hpp"

namespace graphheat {

/// Grayscale image with real-valued intensities, row-major, top-left
/// origin. Values are nominally 0..255 but held as unquantized doubles;
/// clamping and rounding happen only in write_pgm.
struct GrayImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> pixels; // rows * cols entries

    GrayImage() = default;
    GrayImage(int r, int c, double fill = 0.0);

    double& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * cols + c]; }
};

enum class PgmMode { ascii, binary };

/// Parses P2 (ASCII) or P5 (binary) PGM. Header comments (# ...) are
/// skipped; maxval must be in [1, 255] and values below 255 are rescaled
/// linearly to the 0..255 range. Distinct PgmError kinds for bad magic,
/// unsupported PNM variants, malformed headers, bad maxval, truncated
/// payloads, and out-of-range samples.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm_file(const std::string& path);

/// Serializes with maxval 255. Values are clamped to [0, 255] and then
/// rounded half away from zero. ASCII output wraps lines below 70 chars.
void write_pgm(const GrayImage& img, std::ostream& out, PgmMode mode);
void write_pgm_file(const GrayImage& img, const std::string& path, PgmMode mode);

/// Per-axis resampling: area-weighted box filter when shrinking, bilinear
/// when enlarging, exact copy at equal size. Constant images stay constant.
GrayImage resize(const GrayImage& img, int rows, int cols);

/// Lossless reinterpretation between images and grid signals (row-major
/// vertex order). No rounding in either direction.
GraphSignal image_to_signal(const GrayImage& img);
GrayImage signal_to_image(const GraphSignal& s, const GridSpec& spec);

} // namespace graphheat
