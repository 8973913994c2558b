#include "graphheat/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace graphheat {

GrayImage::GrayImage(int r, int c, double fill) : rows(r), cols(c) {
    if (r < 1 || c < 1) {
        throw RangeError("GrayImage: dimensions must be >= 1");
    }
    pixels.assign(static_cast<std::size_t>(r) * c, fill);
}

namespace {

// Skips whitespace and '#' comments (which run to end of line).
void skip_separators(std::istream& in) {
    for (;;) {
        const int ch = in.peek();
        if (ch == '#') {
            in.get();
            while (in.good() && in.get() != '\n') {
            }
        } else if (ch != EOF && std::isspace(static_cast<unsigned char>(ch))) {
            in.get();
        } else {
            return;
        }
    }
}

long parse_unsigned(std::istream& in, PgmError::Kind on_eof, PgmError::Kind on_junk,
                    const char* what) {
    skip_separators(in);
    int ch = in.peek();
    if (ch == EOF) {
        throw PgmError(on_eof, std::string("read_pgm: stream ended before ") + what);
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw PgmError(on_junk, std::string("read_pgm: expected digits for ") + what);
    }
    long value = 0;
    while ((ch = in.peek()) != EOF && std::isdigit(static_cast<unsigned char>(ch))) {
        in.get();
        value = value * 10 + (ch - '0');
        if (value > 1'000'000'000L) {
            throw PgmError(on_junk, std::string("read_pgm: absurd value for ") + what);
        }
    }
    return value;
}

} // namespace

GrayImage read_pgm(std::istream& in) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2 || magic[0] != 'P') {
        throw PgmError(PgmError::Kind::bad_magic, "read_pgm: not a PNM stream");
    }
    if (magic[1] != '2' && magic[1] != '5') {
        if (magic[1] >= '1' && magic[1] <= '7') {
            throw PgmError(PgmError::Kind::unsupported_format,
                           std::string("read_pgm: P") + magic[1] +
                               " is not grayscale PGM (only P2/P5 supported)");
        }
        throw PgmError(PgmError::Kind::bad_magic, "read_pgm: unknown magic");
    }
    const bool binary = magic[1] == '5';

    const long width = parse_unsigned(in, PgmError::Kind::bad_header, PgmError::Kind::bad_header,
                                      "width");
    const long height = parse_unsigned(in, PgmError::Kind::bad_header, PgmError::Kind::bad_header,
                                       "height");
    if (width < 1 || height < 1 || width > 65535 || height > 65535) {
        throw PgmError(PgmError::Kind::bad_header, "read_pgm: bad dimensions " +
                                                       std::to_string(width) + "x" +
                                                       std::to_string(height));
    }
    const long maxval = parse_unsigned(in, PgmError::Kind::bad_header, PgmError::Kind::bad_header,
                                       "maxval");
    if (maxval < 1 || maxval > 255) {
        throw PgmError(PgmError::Kind::bad_maxval,
                       "read_pgm: maxval " + std::to_string(maxval) + " outside [1, 255]");
    }

    GrayImage img(static_cast<int>(height), static_cast<int>(width));
    const std::size_t count = img.pixels.size();
    const double scale = 255.0 / static_cast<double>(maxval);

    if (binary) {
        // exactly one whitespace byte separates the header from the raster
        const int sep = in.get();
        if (sep == EOF || !std::isspace(static_cast<unsigned char>(sep))) {
            throw PgmError(PgmError::Kind::bad_header,
                           "read_pgm: missing separator before binary raster");
        }
        std::vector<unsigned char> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count) {
            throw PgmError(PgmError::Kind::truncated,
                           "read_pgm: binary payload holds " + std::to_string(in.gcount()) +
                               " of " + std::to_string(count) + " samples");
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (raw[i] > maxval) {
                throw PgmError(PgmError::Kind::bad_value,
                               "read_pgm: sample " + std::to_string(raw[i]) + " exceeds maxval");
            }
            img.pixels[i] = raw[i] * scale;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = parse_unsigned(in, PgmError::Kind::truncated, PgmError::Kind::bad_value,
                                          "sample");
            if (v > maxval) {
                throw PgmError(PgmError::Kind::bad_value,
                               "read_pgm: sample " + std::to_string(v) + " exceeds maxval");
            }
            img.pixels[i] = static_cast<double>(v) * scale;
        }
    }
    return img;
}

GrayImage read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    return read_pgm(in);
}

namespace {

int quantize(double v) {
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    return static_cast<int>(std::lround(v)); // half away from zero
}

} // namespace

void write_pgm(const GrayImage& img, std::ostream& out, PgmMode mode) {
    if (img.rows < 1 || img.cols < 1 ||
        img.pixels.size() != static_cast<std::size_t>(img.rows) * img.cols) {
        throw RangeError("write_pgm: inconsistent image dimensions");
    }
    out << (mode == PgmMode::ascii ? "P2" : "P5") << '\n'
        << img.cols << ' ' << img.rows << '\n'
        << "255\n";
    if (mode == PgmMode::binary) {
        std::vector<unsigned char> raw(img.pixels.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            raw[i] = static_cast<unsigned char>(quantize(img.pixels[i]));
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    } else {
        std::string line;
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            const std::string tok = std::to_string(quantize(img.pixels[i]));
            if (!line.empty() && line.size() + 1 + tok.size() > 69) {
                out << line << '\n';
                line.clear();
            }
            if (!line.empty()) line += ' ';
            line += tok;
        }
        if (!line.empty()) out << line << '\n';
    }
}

void write_pgm_file(const GrayImage& img, const std::string& path, PgmMode mode) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    write_pgm(img, out, mode);
    if (!out) {
        throw IoError("write failed on " + path);
    }
}

namespace {

// One resampling pass along the row axis. Columns are handled by resizing
// the transpose.
GrayImage resize_rows(const GrayImage& src, int new_rows) {
    if (new_rows == src.rows) return src;
    GrayImage dst(new_rows, src.cols);
    if (new_rows < src.rows) {
        // area-weighted box filter; cell boundaries are exact when the
        // ratio is an integer
        for (int d = 0; d < new_rows; ++d) {
            const double lo = static_cast<double>(d) * src.rows / new_rows;
            const double hi = static_cast<double>(d + 1) * src.rows / new_rows;
            const int first = static_cast<int>(std::floor(lo));
            const int last = std::min(src.rows - 1, static_cast<int>(std::ceil(hi)) - 1);
            for (int c = 0; c < src.cols; ++c) {
                double acc = 0.0;
                for (int i = first; i <= last; ++i) {
                    const double w = std::min(hi, static_cast<double>(i + 1)) -
                                     std::max(lo, static_cast<double>(i));
                    if (w > 0.0) acc += w * src.at(i, c);
                }
                dst.at(d, c) = acc / (hi - lo);
            }
        }
    } else {
        // bilinear, centers aligned
        for (int d = 0; d < new_rows; ++d) {
            const double x = (d + 0.5) * src.rows / new_rows - 0.5;
            int i0 = static_cast<int>(std::floor(x));
            double w = x - i0;
            if (i0 < 0) {
                i0 = 0;
                w = 0.0;
            }
            int i1 = i0 + 1;
            if (i1 > src.rows - 1) {
                i1 = src.rows - 1;
                w = 0.0;
            }
            for (int c = 0; c < src.cols; ++c) {
                dst.at(d, c) = (1.0 - w) * src.at(i0, c) + w * src.at(i1, c);
            }
        }
    }
    return dst;
}

GrayImage transpose(const GrayImage& src) {
    GrayImage dst(src.cols, src.rows);
    for (int r = 0; r < src.rows; ++r) {
        for (int c = 0; c < src.cols; ++c) {
            dst.at(c, r) = src.at(r, c);
        }
    }
    return dst;
}

} // namespace

GrayImage resize(const GrayImage& img, int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw RangeError("resize: target dimensions must be >= 1");
    }
    if (rows == img.rows && cols == img.cols) return img;
    GrayImage tmp = resize_rows(img, rows);
    if (cols == tmp.cols) return tmp;
    return transpose(resize_rows(transpose(tmp), cols));
}

GraphSignal image_to_signal(const GrayImage& img) {
    return Eigen::Map<const Eigen::VectorXd>(img.pixels.data(),
                                             static_cast<Eigen::Index>(img.pixels.size()));
}

GrayImage signal_to_image(const GraphSignal& s, const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) {
        throw RangeError("signal_to_image: grid dimensions must be >= 1");
    }
    if (s.size() != static_cast<Eigen::Index>(spec.rows) * spec.cols) {
        throw DimensionError("signal_to_image: signal length " + std::to_string(s.size()) +
                             " != " + std::to_string(spec.rows) + "x" + std::to_string(spec.cols));
    }
    GrayImage img(spec.rows, spec.cols);
    Eigen::Map<Eigen::VectorXd>(img.pixels.data(), s.size()) = s;
    return img;
}

} // namespace graphheat
