// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

// Bakes a scene into a light-field texture: every texel is a ray leaving the
// proxy surface at node (u, v) in direction (s, t), and its value is the
// radiance the scene sends back along that ray (traced inward).

#include <lf4d/geometry.hpp>
#include <lf4d/parallel.hpp>
#include <lf4d/scene.hpp>
#include <lf4d/texture.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lf4d {

enum class SupersampleMode { None, Latin, Tensor };

inline const char *ToString(SupersampleMode m) {
    switch (m) {
    case SupersampleMode::None: return "none";
    case SupersampleMode::Latin: return "latin";
    case SupersampleMode::Tensor: return "tensor";
    }
    return "?";
}

inline SupersampleMode ParseSupersampleMode(const std::string &s) {
    if (s == "none") return SupersampleMode::None;
    if (s == "latin") return SupersampleMode::Latin;
    if (s == "tensor") return SupersampleMode::Tensor;
    throw std::invalid_argument("unknown supersample mode '" + s + "' (expected none, latin, tensor)");
}

// Jitter in texel units along (u, v, s, t).
using Offset4 = std::array<double, 4>;

struct SynthesisConfig {
    TextureDims dims;
    ChannelFormat format = ChannelFormat::RGB8;
    int supersample = 1;
    SupersampleMode mode = SupersampleMode::None;
    std::uint64_t seed = 0;
    int threads = 0;  // 0: ResolveThreadCount()
    // Called with (completed spatial nodes, total spatial nodes); may be
    // called from worker threads, serialized by the synthesizer.
    std::function<void(std::uint64_t, std::uint64_t)> progress;

    void Validate() const {
        if (supersample < 1) throw std::invalid_argument("supersample factor must be >= 1");
        if (dims.u < 2 || dims.v < 2 || dims.s < 2 || dims.t < 2)
            throw std::invalid_argument("every texture dimension must be at least 2");
    }
};

struct SynthesisStats {
    std::uint64_t texels = 0;
    std::uint64_t rays = 0;
    int threads = 1;
};

// Stream seed for one texel, so the jitter pattern does not depend on how
// texels are distributed over threads.
inline std::uint64_t TexelSeed(std::uint64_t seed, std::uint64_t texel) {
    // splitmix64 finalizer over the combined key
    std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + texel + 0x632BE59BD9B4E019ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// none (or n = 1): the single zero offset. latin: n offsets whose values
// along every axis fall in n distinct strata of [-0.5, 0.5). tensor: the
// full n^4 stratified grid, jittered within each cell.
inline void SupersampleOffsetsInto(std::vector<Offset4> &out, int n, SupersampleMode mode,
                                   std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("supersample factor must be >= 1");
    out.clear();
    if (n == 1 || mode == SupersampleMode::None) {
        out.push_back(Offset4{0, 0, 0, 0});
        return;
    }

    // minstd needs a state in [1, 2^31 - 2]
    std::minstd_rand rng(std::uint32_t(seed % 2147483646u) + 1u);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    auto stratum = [&](int bin) {
        double x = (bin + jitter(rng)) / n - 0.5;
        return std::min(x, std::nextafter(0.5, 0.0));
    };

    if (mode == SupersampleMode::Latin) {
        out.resize(n);
        int perm[64];
        if (n > 64) throw std::invalid_argument("latin supersampling supports at most 64 samples");
        for (int axis = 0; axis < 4; ++axis) {
            std::iota(perm, perm + n, 0);
            std::shuffle(perm, perm + n, rng);
            for (int i = 0; i < n; ++i) out[i][axis] = stratum(perm[i]);
        }
    } else {
        out.reserve(std::size_t(n) * n * n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d)
                        out.push_back({stratum(a), stratum(b), stratum(c), stratum(d)});
    }
}

inline std::vector<Offset4> SupersampleOffsets(int n, SupersampleMode mode, std::uint64_t seed) {
    std::vector<Offset4> out;
    SupersampleOffsetsInto(out, n, mode, seed);
    return out;
}

namespace detail {

// Direction in frame coordinates for angular coordinate a.
inline Vec3 AngularLocal(const AngularCoord &a) {
    double alpha = kPi * a.s - kPi / 2;
    double beta = kPi * a.t - kPi / 2;
    double cb = std::cos(beta);
    return {cb * std::sin(alpha), std::sin(beta), std::max(0.0, cb * std::cos(alpha))};
}

// Radiance arriving at the proxy point p from inside, along outgoing direction d.
inline Color TraceInward(const Scene &scene, const Vec3 &p, const Vec3 &d) {
    // Nudged inward so a primitive touching the proxy cannot self-hit at t = 0.
    return Trace(scene, Ray{p - d * 1e-4, -d});
}

inline double WrapUnit(double x) {
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
}

}  // namespace detail

// Continuous texture coordinates of a jittered sample around texel `idx`:
// u wraps around the seam, v, s and t clamp to [0, 1].
inline std::pair<SurfaceCoord, AngularCoord> JitteredCoords(const TexelIndex &idx,
                                                            const Offset4 &o,
                                                            const TextureDims &dims) {
    SurfaceCoord sc{detail::WrapUnit((idx.iu + o[0]) / dims.u),
                    Clamp((idx.iv + o[1]) / (dims.v - 1), 0.0, 1.0)};
    AngularCoord ac{Clamp((idx.is + o[2]) / (dims.s - 1), 0.0, 1.0),
                    Clamp((idx.it + o[3]) / (dims.t - 1), 0.0, 1.0)};
    return {sc, ac};
}

inline LightFieldTexture Synthesize(const Scene &scene, const SynthesisConfig &cfg,
                                    SynthesisStats *stats = nullptr) {
    cfg.Validate();
    const TextureDims dims = cfg.dims;
    const ProxyModel &model = scene.model;
    LightFieldTexture tex(dims, cfg.format);
    const std::uint64_t nodes = std::uint64_t(dims.u) * dims.v;
    const std::uint64_t per_node = std::uint64_t(dims.s) * dims.t;
    const bool jittered = cfg.supersample > 1 && cfg.mode != SupersampleMode::None;
    const int threads = ResolveThreadCount(cfg.threads);

    // Direction table for the unjittered angular nodes.
    std::vector<Vec3> local_dirs(per_node);
    for (std::uint32_t is = 0; is < dims.s; ++is)
        for (std::uint32_t it = 0; it < dims.t; ++it)
            local_dirs[std::size_t(is) * dims.t + it] = detail::AngularLocal(
                {GridCoord(is, dims.s, false), GridCoord(it, dims.t, false)});

    std::atomic<std::uint64_t> rays{0};
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;

    ParallelFor(nodes, 8, threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t local_rays = 0;
        std::vector<Offset4> offsets;
        for (std::uint64_t node = begin; node < end; ++node) {
            auto iu = std::uint32_t(node / dims.v);
            auto iv = std::uint32_t(node % dims.v);
            const std::uint64_t base = node * per_node;

            if (!jittered) {
                Vec3 p = SpherePoint({GridCoord(iu, dims.u, true), GridCoord(iv, dims.v, false)}, model);
                SurfaceFrame frame = LocalFrame(Normalize(p - model.center));
                for (std::uint64_t k = 0; k < per_node; ++k)
                    tex.StoreOffset(base + k,
                                    detail::TraceInward(scene, p, frame.ToWorld(local_dirs[k])));
                local_rays += per_node;
                continue;
            }

            for (std::uint32_t is = 0; is < dims.s; ++is) {
                for (std::uint32_t it = 0; it < dims.t; ++it) {
                    std::uint64_t texel = base + std::uint64_t(is) * dims.t + it;
                    SupersampleOffsetsInto(offsets, cfg.supersample, cfg.mode,
                                           TexelSeed(cfg.seed, texel));
                    Color sum;
                    for (const Offset4 &o : offsets) {
                        auto [sc, ac] = JitteredCoords({iu, iv, is, it}, o, dims);
                        Vec3 p = SpherePoint(sc, model);
                        SurfaceFrame frame = LocalFrame(Normalize(p - model.center));
                        sum += detail::TraceInward(scene, p, AngularDir(frame, ac));
                    }
                    tex.StoreOffset(texel, sum / double(offsets.size()));
                    local_rays += offsets.size();
                }
            }
        }
        rays += local_rays;
        if (cfg.progress) {
            // count under the lock so reports arrive in increasing order
            std::lock_guard lock(progress_mutex);
            cfg.progress(done += (end - begin), nodes);
        }
    });

    if (stats) {
        stats->texels = tex.TexelCount();
        stats->rays = rays;
        stats->threads = threads;
    }
    return tex;
}

}  // namespace lf4d
