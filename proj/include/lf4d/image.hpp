// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <lf4d/color.hpp>
#include <lf4d/errors.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lf4d {

class Image {
  public:
    Image() = default;
    Image(int width, int height, const Color &fill = {})
        : width_(width), height_(height), pixels_(std::size_t(width) * height, fill) {
        if (width < 1 || height < 1) throw std::invalid_argument("image size must be positive");
    }

    int Width() const { return width_; }
    int Height() const { return height_; }
    std::size_t PixelCount() const { return pixels_.size(); }

    Color &operator()(int x, int y) { return pixels_[std::size_t(y) * width_ + x]; }
    const Color &operator()(int x, int y) const { return pixels_[std::size_t(y) * width_ + x]; }

    std::vector<Color> &Pixels() { return pixels_; }
    const std::vector<Color> &Pixels() const { return pixels_; }

  private:
    int width_ = 0, height_ = 0;
    std::vector<Color> pixels_;
};

// Linear value to an 8-bit display level: plain clamp, or gamma 2.2 encode.
inline std::uint8_t ToByte(double v, bool gamma22 = false) {
    v = Clamp(v, 0.0, 1.0);
    if (gamma22) v = std::pow(v, 1.0 / 2.2);
    return std::uint8_t(std::lround(v * 255.0));
}

inline std::vector<std::uint8_t> ToBytes(const Image &img, bool gamma22 = false) {
    std::vector<std::uint8_t> out;
    out.reserve(img.PixelCount() * 3);
    for (const Color &c : img.Pixels())
        for (int ch = 0; ch < 3; ++ch) out.push_back(ToByte(c[ch], gamma22));
    return out;
}

inline void WritePpm(std::ostream &os, const Image &img, bool gamma22 = false) {
    os << "P6\n" << img.Width() << " " << img.Height() << "\n255\n";
    auto bytes = ToBytes(img, gamma22);
    os.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
    if (!os) throw IoError("failed writing PPM stream");
}

namespace detail {

inline int ReadPpmInt(std::istream &is) {
    int c = is.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = is.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = is.get();
    }
    if (c == EOF || !std::isdigit(c)) throw FormatError("malformed PPM header");
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > (1 << 24)) throw FormatError("PPM header value too large");
        c = is.get();
    }
    // exactly one whitespace byte follows the last header field
    if (c == EOF || !std::isspace(c)) throw FormatError("malformed PPM header");
    return int(v);
}

}  // namespace detail

// Reads a binary P6 file with maxval 255. Pixels become level / 255.
inline Image ReadPpm(std::istream &is) {
    char magic[2] = {};
    is.read(magic, 2);
    if (is.gcount() != 2 || magic[0] != 'P' || magic[1] != '6')
        throw FormatError("not a binary PPM (P6) file");
    int w = detail::ReadPpmInt(is);
    int h = detail::ReadPpmInt(is);
    int maxval = detail::ReadPpmInt(is);
    if (w < 1 || h < 1) throw FormatError("PPM has empty dimensions");
    if (maxval != 255) throw FormatError("only maxval 255 PPM files are supported");
    std::vector<std::uint8_t> bytes(std::size_t(w) * h * 3);
    is.read(reinterpret_cast<char *>(bytes.data()), std::streamsize(bytes.size()));
    if (is.gcount() != std::streamsize(bytes.size())) throw FormatError("PPM pixel data truncated");
    Image img(w, h);
    for (std::size_t i = 0; i < img.PixelCount(); ++i)
        img.Pixels()[i] = {bytes[3 * i] / 255.0, bytes[3 * i + 1] / 255.0, bytes[3 * i + 2] / 255.0};
    return img;
}

inline void SavePpm(const std::filesystem::path &path, const Image &img, bool gamma22 = false) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    WritePpm(os, img, gamma22);
    os.flush();
    if (!os) throw IoError("failed writing " + path.string());
}

inline Image LoadPpm(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    return ReadPpm(is);
}

}  // namespace lf4d
