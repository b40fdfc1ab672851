// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <lf4d/errors.hpp>
#include <lf4d/geometry.hpp>
#include <lf4d/image.hpp>
#include <lf4d/parallel.hpp>
#include <lf4d/scene.hpp>
#include <lf4d/texture.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace lf4d {

// Pinhole camera. fov_deg is the horizontal field of view.
struct Camera {
    Vec3 position{10, 0, 0};
    Vec3 direction{-1, 0, 0};
    double fov_deg = 60;
    int width = 256, height = 256;
    Vec3 up = kWorldUp;

    void Validate() const {
        if (!IsFinite(position) || !IsFinite(direction) || !IsFinite(up))
            throw std::invalid_argument("camera vectors must be finite");
        if (!(Length(direction) > 0)) throw std::invalid_argument("camera direction must be non-zero");
        if (!(fov_deg > 0 && fov_deg < 180))
            throw std::invalid_argument("camera fov must lie in (0, 180) degrees");
        if (width < 1 || height < 1) throw std::invalid_argument("image size must be positive");
    }

    std::string ToString() const {
        std::ostringstream ss;
        ss << "pos=" << position.x << "," << position.y << "," << position.z
           << " dir=" << direction.x << "," << direction.y << "," << direction.z << " fov=" << fov_deg
           << " size=" << width << "x" << height;
        return ss.str();
    }
};

struct CameraBasis {
    Vec3 forward, right, up;
};

// right = forward x up; when forward is parallel to the up hint the right
// axis falls back to +x with its forward component removed.
inline CameraBasis MakeCameraBasis(const Camera &cam) {
    CameraBasis b;
    b.forward = Normalize(cam.direction);
    Vec3 r = Cross(b.forward, Normalize(cam.up));
    if (Length(r) < kPoleFrameEpsilon) {
        Vec3 ref(1, 0, 0);
        r = ref - b.forward * Dot(ref, b.forward);
        if (Length(r) < kPoleFrameEpsilon) r = Vec3(0, 0, 1) - b.forward * b.forward.z;
    }
    b.right = Normalize(r);
    b.up = Cross(b.right, b.forward);
    return b;
}

inline Ray PrimaryRay(const Camera &cam, const CameraBasis &basis, double px, double py) {
    double tan_half = std::tan(Radians(cam.fov_deg) / 2);
    double x = (2 * (px + 0.5) / cam.width - 1) * tan_half;
    double y = (1 - 2 * (py + 0.5) / cam.height) * tan_half * double(cam.height) / cam.width;
    return {cam.position, Normalize(basis.forward + basis.right * x + basis.up * y)};
}

inline Ray PrimaryRay(const Camera &cam, int px, int py) {
    if (px < 0 || py < 0 || px >= cam.width || py >= cam.height)
        throw IndexError("pixel outside the image");
    return PrimaryRay(cam, MakeCameraBasis(cam), px, py);
}

struct RenderOptions {
    int threads = 0;  // 0: ResolveThreadCount()
    Color background{0, 0, 0};
    SampleOptions sample;
};

struct RenderStats {
    std::uint64_t fetches = 0;
    std::uint64_t covered_pixels = 0;
};

// Texture-based view: every pixel whose ray meets the proxy sphere is
// reconstructed from the light field at the hit point; others get background.
inline Image RenderView(const LightFieldTexture &tex, const ProxyModel &model, const Camera &cam,
                        const RenderOptions &opts = {}, RenderStats *stats = nullptr) {
    cam.Validate();
    if (!(Distance(cam.position, model.center) > model.radius))
        throw PreconditionError(
            "observer must be strictly outside the proxy sphere (inside views are not supported)");
    Image img(cam.width, cam.height, opts.background);
    CameraBasis basis = MakeCameraBasis(cam);
    // Square tiles keep neighbouring pixels, and so their texel blocks, together.
    constexpr int kTile = 16;
    const int tiles_x = (cam.width + kTile - 1) / kTile;
    const int tiles_y = (cam.height + kTile - 1) / kTile;
    std::vector<RenderStats> tile_stats(std::size_t(tiles_x) * tiles_y);

    ParallelFor(tile_stats.size(), 1, ResolveThreadCount(opts.threads),
                [&](std::uint64_t t0, std::uint64_t t1) {
                    for (auto t = t0; t < t1; ++t) {
                        RenderStats &rs = tile_stats[t];
                        CountingFetch fetch{tex, rs.fetches};
                        const int x0 = int(t % tiles_x) * kTile, y0 = int(t / tiles_x) * kTile;
                        const int x1 = std::min(x0 + kTile, cam.width), y1 = std::min(y0 + kTile, cam.height);
                        for (int y = y0; y < y1; ++y)
                            for (int x = x0; x < x1; ++x) {
                                Ray ray = PrimaryRay(cam, basis, x, y);
                                auto hit = RaySphereHit(ray, model);
                                if (!hit) continue;
                                ++rs.covered_pixels;
                                img(x, y) = SampleWith(fetch, tex.Dims(), model, hit->point,
                                                       cam.position, opts.sample);
                            }
                    }
                });
    if (stats) {
        *stats = {};
        for (const RenderStats &rs : tile_stats) {
            stats->fetches += rs.fetches;
            stats->covered_pixels += rs.covered_pixels;
        }
    }
    return img;
}

// Ground truth: the scene objects traced directly, ignoring the proxy.
inline Image RenderDirect(const Scene &scene, const Camera &cam, int threads = 0) {
    cam.Validate();
    Image img(cam.width, cam.height, scene.background);
    CameraBasis basis = MakeCameraBasis(cam);
    ParallelFor(std::uint64_t(cam.height), 4, ResolveThreadCount(threads),
                [&](std::uint64_t y0, std::uint64_t y1) {
                    for (auto y = int(y0); y < int(y1); ++y)
                        for (int x = 0; x < cam.width; ++x)
                            img(x, y) = Trace(scene, PrimaryRay(cam, basis, x, y));
                });
    return img;
}

// Cameras spaced evenly on the circle swept by rotating the template position
// about the vertical axis through the model center, all aimed at the center.
// Frame k is rotated by 360 k / count degrees, taking +x toward +z.
inline std::vector<Camera> OrbitFrames(const Camera &tmpl, const ProxyModel &model, int count) {
    if (count < 1) throw std::invalid_argument("orbit frame count must be >= 1");
    std::vector<Camera> out;
    Vec3 rel = tmpl.position - model.center;
    for (int k = 0; k < count; ++k) {
        double a = 2 * kPi * k / count;
        double c = std::cos(a), s = std::sin(a);
        Camera cam = tmpl;
        if (k > 0) cam.position = model.center + Vec3(rel.x * c - rel.z * s, rel.y, rel.x * s + rel.z * c);
        cam.direction = model.center - cam.position;
        if (Length(cam.direction) == 0) cam.direction = tmpl.direction;
        out.push_back(cam);
    }
    return out;
}

}  // namespace lf4d
