// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

// LF4D container, little-endian throughout:
//
//   offset  size  field
//   0       4     magic "LF4D"
//   4       2     format version (1)
//   6       2     channel code (0 = RGB8, 1 = RGBF32)
//   8       16    U, V, S, T as u32
//   24      ...   texels in (u, v, s, t) row-major order, 3 or 12 bytes each
//
// No padding, no compression.

#include <lf4d/errors.hpp>
#include <lf4d/texture.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace lf4d {

inline constexpr std::array<char, 4> kLf4dMagic = {'L', 'F', '4', 'D'};
inline constexpr std::uint16_t kLf4dVersion = 1;
inline constexpr std::size_t kLf4dHeaderSize = 24;

static_assert(std::endian::native == std::endian::little,
              "LF4D texel payload is written straight from memory; big-endian hosts need a swap");

namespace detail {

inline void PutU16(std::uint8_t *p, std::uint16_t v) {
    p[0] = std::uint8_t(v);
    p[1] = std::uint8_t(v >> 8);
}
inline void PutU32(std::uint8_t *p, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) p[i] = std::uint8_t(v >> (8 * i));
}
inline std::uint16_t GetU16(const std::uint8_t *p) { return std::uint16_t(p[0] | (p[1] << 8)); }
inline std::uint32_t GetU32(const std::uint8_t *p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
           (std::uint32_t(p[3]) << 24);
}

}  // namespace detail

inline void WriteLf4d(std::ostream &os, const LightFieldTexture &tex) {
    std::array<std::uint8_t, kLf4dHeaderSize> header{};
    std::copy(kLf4dMagic.begin(), kLf4dMagic.end(), header.begin());
    detail::PutU16(&header[4], kLf4dVersion);
    detail::PutU16(&header[6], std::uint16_t(tex.Format()));
    const TextureDims &d = tex.Dims();
    detail::PutU32(&header[8], d.u);
    detail::PutU32(&header[12], d.v);
    detail::PutU32(&header[16], d.s);
    detail::PutU32(&header[20], d.t);
    os.write(reinterpret_cast<const char *>(header.data()), header.size());

    const auto &bytes = tex.Bytes();
    constexpr std::size_t kChunk = std::size_t(1) << 24;
    for (std::size_t off = 0; off < bytes.size() && os; off += kChunk) {
        std::size_t n = std::min(kChunk, bytes.size() - off);
        os.write(reinterpret_cast<const char *>(bytes.data() + off), std::streamsize(n));
    }
    if (!os) throw IoError("failed writing LF4D stream");
}

inline LightFieldTexture ReadLf4d(std::istream &is) {
    std::array<std::uint8_t, kLf4dHeaderSize> header{};
    is.read(reinterpret_cast<char *>(header.data()), header.size());
    if (is.gcount() != std::streamsize(header.size()))
        throw FormatError("LF4D header truncated");
    if (!std::equal(kLf4dMagic.begin(), kLf4dMagic.end(), header.begin()))
        throw FormatError("not an LF4D file (bad magic)");
    std::uint16_t version = detail::GetU16(&header[4]);
    if (version != kLf4dVersion)
        throw FormatError("unsupported LF4D version " + std::to_string(version));
    std::uint16_t code = detail::GetU16(&header[6]);
    if (code > 1) throw FormatError("unknown LF4D channel code " + std::to_string(code));
    TextureDims d{detail::GetU32(&header[8]), detail::GetU32(&header[12]),
                  detail::GetU32(&header[16]), detail::GetU32(&header[20])};
    if (d.u < 2 || d.v < 2 || d.s < 2 || d.t < 2)
        throw FormatError("LF4D dimensions must each be at least 2, got " + d.ToString());

    LightFieldTexture tex(d, ChannelFormat(code));
    auto &bytes = tex.Bytes();
    is.read(reinterpret_cast<char *>(bytes.data()), std::streamsize(bytes.size()));
    if (is.gcount() != std::streamsize(bytes.size()))
        throw FormatError("LF4D texel payload truncated: expected " + std::to_string(bytes.size()) +
                          " bytes");
    if (is.peek() != std::char_traits<char>::eof())
        throw FormatError("trailing bytes after LF4D texel payload");
    return tex;
}

inline void SaveLf4d(const std::filesystem::path &path, const LightFieldTexture &tex) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    WriteLf4d(os, tex);
    os.flush();
    if (!os) throw IoError("failed writing " + path.string());
}

inline LightFieldTexture LoadLf4d(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    return ReadLf4d(is);
}

}  // namespace lf4d
