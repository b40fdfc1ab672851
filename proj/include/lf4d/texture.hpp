// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

// The 2+2D light-field texture T(u, v, s, t) and its reconstruction kernel.
//
// Grid registration is node-centred. The azimuthal u axis is periodic with
// spacing 1/U (node U wraps to node 0); v, s and t span [0, 1] inclusive with
// spacing 1/(N - 1) and clamp at their boundary nodes.
//
// Texels are stored row-major in (u, v, s, t) order, angular axes innermost,
// so the four angular 2x2 blocks touched by one sample are each contiguous.

#include <lf4d/color.hpp>
#include <lf4d/errors.hpp>
#include <lf4d/geometry.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lf4d {

enum class ChannelFormat : std::uint16_t { RGB8 = 0, RGBF32 = 1 };

constexpr std::size_t BytesPerTexel(ChannelFormat f) { return f == ChannelFormat::RGB8 ? 3 : 12; }

inline const char *ToString(ChannelFormat f) { return f == ChannelFormat::RGB8 ? "rgb8" : "rgbf32"; }

struct TextureDims {
    std::uint32_t u = 2, v = 2, s = 2, t = 2;

    std::uint64_t TexelCount() const { return std::uint64_t(u) * v * s * t; }
    bool operator==(const TextureDims &) const = default;
    std::string ToString() const {
        std::ostringstream ss;
        ss << u << "x" << v << "x" << s << "x" << t;
        return ss.str();
    }
};

struct TexelIndex {
    std::uint32_t iu = 0, iv = 0, is = 0, it = 0;
};

// Parametric coordinate of a grid node.
constexpr double GridCoord(std::uint32_t index, std::uint32_t size, bool periodic) {
    return periodic ? double(index) / double(size) : double(index) / double(size - 1);
}

// Two neighbouring nodes of a continuous coordinate and the weight of the second.
struct GridSpan {
    std::uint32_t i0 = 0, i1 = 0;
    double frac = 0;
};

inline GridSpan LocateClamped(double c, std::uint32_t size) {
    double x = Clamp(c, 0.0, 1.0) * double(size - 1);
    auto i0 = std::uint32_t(std::min<double>(std::floor(x), size - 2));
    return {i0, i0 + 1, Clamp(x - i0, 0.0, 1.0)};
}

inline GridSpan LocatePeriodic(double c, std::uint32_t size) {
    double x = c * double(size);
    double fl = std::floor(x);
    double frac = x - fl;
    long long i = (long long)fl % (long long)size;
    if (i < 0) i += size;
    return {std::uint32_t(i), std::uint32_t((i + 1) % size), Clamp(frac, 0.0, 1.0)};
}

class LightFieldTexture {
  public:
    LightFieldTexture() = default;
    LightFieldTexture(const TextureDims &dims, ChannelFormat format) : dims_(dims), format_(format) {
        if (dims.u < 2 || dims.v < 2 || dims.s < 2 || dims.t < 2)
            throw std::invalid_argument("every texture dimension must be at least 2, got " +
                                        dims.ToString());
        data_.assign(dims.TexelCount() * BytesPerTexel(format), 0);
    }

    const TextureDims &Dims() const { return dims_; }
    ChannelFormat Format() const { return format_; }
    std::uint64_t TexelCount() const { return dims_.TexelCount(); }

    std::uint64_t Offset(const TexelIndex &i) const {
        return ((std::uint64_t(i.iu) * dims_.v + i.iv) * dims_.s + i.is) * dims_.t + i.it;
    }

    bool InBounds(const TexelIndex &i) const {
        return i.iu < dims_.u && i.iv < dims_.v && i.is < dims_.s && i.it < dims_.t;
    }

    Color Fetch(const TexelIndex &i) const {
        if (!InBounds(i)) throw IndexError(OutOfBounds(i));
        return FetchOffset(Offset(i));
    }

    Color FetchOffset(std::uint64_t offset) const {
        const std::uint8_t *p = data_.data() + offset * BytesPerTexel(format_);
        if (format_ == ChannelFormat::RGB8)
            return {p[0] / 255.0, p[1] / 255.0, p[2] / 255.0};
        float f[3];
        std::memcpy(f, p, sizeof f);
        return {f[0], f[1], f[2]};
    }

    // Channels are clamped to [0, 1]; RGB8 rounds to the nearest level.
    void Store(const TexelIndex &i, const Color &c) {
        if (!InBounds(i)) throw IndexError(OutOfBounds(i));
        StoreOffset(Offset(i), c);
    }

    void StoreOffset(std::uint64_t offset, const Color &c) {
        std::uint8_t *p = data_.data() + offset * BytesPerTexel(format_);
        Color k = c.Clamped();
        if (format_ == ChannelFormat::RGB8) {
            for (int ch = 0; ch < 3; ++ch) p[ch] = std::uint8_t(std::lround(k[ch] * 255.0));
        } else {
            float f[3] = {float(k.r), float(k.g), float(k.b)};
            std::memcpy(p, f, sizeof f);
        }
    }

    // Raw texel bytes in storage order (little-endian floats for RGBF32).
    std::vector<std::uint8_t> &Bytes() { return data_; }
    const std::vector<std::uint8_t> &Bytes() const { return data_; }

  private:
    std::string OutOfBounds(const TexelIndex &i) const {
        std::ostringstream ss;
        ss << "texel index (" << i.iu << ", " << i.iv << ", " << i.is << ", " << i.it
           << ") out of bounds for " << dims_.ToString();
        return ss.str();
    }

    TextureDims dims_;
    ChannelFormat format_ = ChannelFormat::RGB8;
    std::vector<std::uint8_t> data_;
};

// Texel accessor used by the sampling kernel. Wrapping it lets callers count
// or trace fetches without a second copy of the algorithm.
struct DirectFetch {
    const LightFieldTexture &tex;
    Color operator()(const TexelIndex &i) const { return tex.FetchOffset(tex.Offset(i)); }
};

struct CountingFetch {
    const LightFieldTexture &tex;
    std::uint64_t &count;
    Color operator()(const TexelIndex &i) const {
        ++count;
        return tex.FetchOffset(tex.Offset(i));
    }
};

template <typename Fetcher>
Color AngularLerpWith(const Fetcher &fetch, const TextureDims &dims, std::uint32_t iu,
                      std::uint32_t iv, const AngularCoord &a) {
    GridSpan gs = LocateClamped(a.s, dims.s);
    GridSpan gt = LocateClamped(a.t, dims.t);
    Color c00 = fetch(TexelIndex{iu, iv, gs.i0, gt.i0});
    Color c01 = fetch(TexelIndex{iu, iv, gs.i0, gt.i1});
    Color c10 = fetch(TexelIndex{iu, iv, gs.i1, gt.i0});
    Color c11 = fetch(TexelIndex{iu, iv, gs.i1, gt.i1});
    double ws = gs.frac, wt = gt.frac;
    return c00 * ((1 - ws) * (1 - wt)) + c01 * ((1 - ws) * wt) + c10 * (ws * (1 - wt)) +
           c11 * (ws * wt);
}

// Bilinear blend of the 2x2 angular neighbourhood of `a` at spatial node (iu, iv).
inline Color AngularLerp(const LightFieldTexture &tex, std::uint32_t iu, std::uint32_t iv,
                         const AngularCoord &a) {
    if (iu >= tex.Dims().u || iv >= tex.Dims().v)
        throw IndexError("spatial node out of bounds");
    return AngularLerpWith(DirectFetch{tex}, tex.Dims(), iu, iv, a);
}

struct SampleOptions {
    // false: each spatial corner P^x looks at the observer along its own
    // direction normalize(O - P^x). true: all corners reuse normalize(O - P).
    bool shared_direction = false;
};

// Reconstructs the radiance leaving proxy point P toward observer O using
// 16 texel fetches: 4 spatial neighbours of P, each blended bilinearly over
// the 4 angular neighbours of its own view direction, then blended spatially.
template <typename Fetcher>
Color SampleWith(const Fetcher &fetch, const TextureDims &dims, const ProxyModel &model,
                 const Vec3 &p, const Vec3 &observer, const SampleOptions &opts = {}) {
    SurfaceCoord uv = SphereParam(p, model);
    if (!(Distance(observer, model.center) > model.radius))
        throw PreconditionError("observer must lie strictly outside the proxy sphere");

    GridSpan su = LocatePeriodic(uv.u, dims.u);
    GridSpan sv = LocateClamped(uv.v, dims.v);
    Vec3 shared_d = Normalize(observer - p);

    std::array<Color, 4> corner;
    const std::uint32_t ius[2] = {su.i0, su.i1};
    const std::uint32_t ivs[2] = {sv.i0, sv.i1};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            SurfaceCoord node{GridCoord(ius[a], dims.u, true), GridCoord(ivs[b], dims.v, false)};
            Vec3 px = SpherePoint(node, model);
            SurfaceFrame frame = LocalFrame(Normalize(px - model.center));
            Vec3 d = opts.shared_direction ? shared_d : Normalize(observer - px);
            corner[a * 2 + b] =
                AngularLerpWith(fetch, dims, ius[a], ivs[b], AngularParamClamped(frame, d));
        }
    }
    double wu = su.frac, wv = sv.frac;
    return corner[0] * ((1 - wu) * (1 - wv)) + corner[1] * ((1 - wu) * wv) +
           corner[2] * (wu * (1 - wv)) + corner[3] * (wu * wv);
}

inline Color Sample(const LightFieldTexture &tex, const ProxyModel &model, const Vec3 &p,
                    const Vec3 &observer, const SampleOptions &opts = {}) {
    return SampleWith(DirectFetch{tex}, tex.Dims(), model, p, observer, opts);
}

}  // namespace lf4d
