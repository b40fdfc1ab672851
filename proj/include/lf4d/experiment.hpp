// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

// Experiment drivers: the near/far aliasing study and the resolution sweep
// of texture renders against direct renders.

#include <lf4d/metrics.hpp>
#include <lf4d/render.hpp>
#include <lf4d/scene.hpp>
#include <lf4d/synthesis.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lf4d {

// Pixel-space bounding box of a primitive's oriented bounding box, padded by
// `pad` pixels and clipped to the image. Empty when nothing is in front of
// the camera.
inline std::optional<Rect> ProjectedBounds(const Camera &cam, const Primitive &prim, int pad = 0) {
    CameraBasis basis = MakeCameraBasis(cam);
    double tan_half = std::tan(Radians(cam.fov_deg) / 2);
    double aspect = double(cam.height) / cam.width;
    Vec3 half;
    switch (prim.Kind()) {
    case ShapeKind::Sphere: half = Vec3(1, 1, 1) * (prim.Size() / 2); break;
    case ShapeKind::Cube: half = Vec3(1, 1, 1) * (prim.Size() / 2); break;
    case ShapeKind::Cylinder: half = Vec3(prim.Size() / 2, prim.Height() / 2, prim.Size() / 2); break;
    }
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (int corner = 0; corner < 8; ++corner) {
        Vec3 local((corner & 1 ? 1 : -1) * half.x, (corner & 2 ? 1 : -1) * half.y,
                   (corner & 4 ? 1 : -1) * half.z);
        Vec3 rel = prim.Position() + prim.ToWorld() * local - cam.position;
        double z = Dot(rel, basis.forward);
        if (z <= 0) return std::nullopt;
        double nx = Dot(rel, basis.right) / z / tan_half;
        double ny = Dot(rel, basis.up) / z / (tan_half * aspect);
        double px = (nx + 1) / 2 * cam.width - 0.5;
        double py = (1 - ny) / 2 * cam.height - 0.5;
        x0 = std::min(x0, px);
        x1 = std::max(x1, px);
        y0 = std::min(y0, py);
        y1 = std::max(y1, py);
    }
    int ix0 = std::max(0, int(std::floor(x0)) - pad);
    int iy0 = std::max(0, int(std::floor(y0)) - pad);
    int ix1 = std::min(cam.width - 1, int(std::ceil(x1)) + pad);
    int iy1 = std::min(cam.height - 1, int(std::ceil(y1)) + pad);
    if (ix1 < ix0 || iy1 < iy0) return std::nullopt;
    return Rect{ix0, iy0, ix1 - ix0 + 1, iy1 - iy0 + 1};
}

using Clock = std::chrono::steady_clock;

inline double SecondsSince(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Aliasing: one cylinder baked near the proxy surface and far behind it,
// rendered from the same pose; blur shows up as lower gradient energy over
// the cylinder's projected window.

struct AliasingConfig {
    TextureDims dims{512, 256, 32, 32};
    int supersample = 1;
    SupersampleMode mode = SupersampleMode::None;
    std::uint64_t seed = 1;
    Camera camera{{5, 0, 0}, {-2, 0, 0}, 60, 256, 256};
    int region_pad = 4;
    int threads = 0;
    // Far placement must lose at least this fraction of gradient energy.
    double min_energy_drop = 0.20;
    std::filesystem::path out_dir;  // images written here when non-empty
    std::function<void(const std::string &)> log;
};

struct AliasingPlacement {
    std::string name;
    Rect region;
    double texture_energy = 0;
    double direct_energy = 0;
    double psnr_vs_direct = 0;
    double synth_seconds = 0;
};

struct AliasingResult {
    AliasingPlacement near, far;
    double energy_drop = 0;  // 1 - far / near (texture renders)
    bool pass = false;

    nlohmann::json ToJson(const AliasingConfig &cfg) const {
        auto one = [](const AliasingPlacement &p) {
            return nlohmann::json{{"name", p.name},
                                  {"region", {p.region.x, p.region.y, p.region.width, p.region.height}},
                                  {"texture_gradient_energy", p.texture_energy},
                                  {"direct_gradient_energy", p.direct_energy},
                                  {"psnr_vs_direct", p.psnr_vs_direct},
                                  {"synth_seconds", p.synth_seconds}};
        };
        return {{"experiment", "aliasing"},
                {"dims", cfg.dims.ToString()},
                {"supersample", cfg.supersample},
                {"mode", ToString(cfg.mode)},
                {"seed", cfg.seed},
                {"camera", cfg.camera.ToString()},
                {"min_energy_drop", cfg.min_energy_drop},
                {"near", one(near)},
                {"far", one(far)},
                {"energy_drop", energy_drop},
                {"pass", pass}};
    }
};

inline AliasingResult RunAliasing(const Scene &near_scene, const Scene &far_scene,
                                  const AliasingConfig &cfg) {
    auto run = [&](const Scene &scene, const std::string &name) {
        if (scene.primitives.empty()) throw std::invalid_argument(name + " scene has no objects");
        AliasingPlacement p;
        p.name = name;
        SynthesisConfig sc;
        sc.dims = cfg.dims;
        sc.supersample = cfg.supersample;
        sc.mode = cfg.mode;
        sc.seed = cfg.seed;
        sc.threads = cfg.threads;
        auto t0 = Clock::now();
        LightFieldTexture tex = Synthesize(scene, sc);
        p.synth_seconds = SecondsSince(t0);
        RenderOptions ro;
        ro.threads = cfg.threads;
        ro.background = scene.background;
        Image view = RenderView(tex, scene.model, cfg.camera, ro);
        Image direct = RenderDirect(scene, cfg.camera, cfg.threads);
        auto region = ProjectedBounds(cfg.camera, scene.primitives.front(), cfg.region_pad);
        if (!region) throw std::runtime_error(name + ": object is not in front of the camera");
        p.region = *region;
        p.texture_energy = GradientEnergy(view, region);
        p.direct_energy = GradientEnergy(direct, region);
        p.psnr_vs_direct = Psnr(view, direct);
        if (!cfg.out_dir.empty()) {
            SavePpm(cfg.out_dir / (name + "_texture.ppm"), view);
            SavePpm(cfg.out_dir / (name + "_direct.ppm"), direct);
        }
        if (cfg.log)
            cfg.log(name + ": synth " + std::to_string(p.synth_seconds) + " s, energy " +
                    std::to_string(p.texture_energy));
        return p;
    };
    AliasingResult r;
    r.near = run(near_scene, "near");
    r.far = run(far_scene, "far");
    r.energy_drop = r.near.texture_energy > 0 ? 1 - r.far.texture_energy / r.near.texture_energy : 0;
    r.pass = r.energy_drop >= cfg.min_energy_drop;
    return r;
}

// ---------------------------------------------------------------------------
// Resolution sweep: bake the scene at several resolutions and compare
// texture renders to direct renders over a fixed set of poses.

// Observer poses of the composed-scene comparison grid.
inline std::vector<Camera> SweepPoses(int width = 256, int height = 256, double fov = 60) {
    std::vector<Camera> poses = {
        {{10, 0, 0}, {-3, 0, 0}, fov, width, height},
        {{10, 0, -3}, {-3, 0, 0}, fov, width, height},
        {{10, 0, 3}, {-3, 0, 0}, fov, width, height},
        {{0, 0, 10}, {0, 0, -3}, fov, width, height},
        {{0, 10, 0}, {0, -3, 0}, fov, width, height},
    };
    return poses;
}

// The four texture resolutions of the comparison grid, at full scale.
inline std::vector<TextureDims> FullSweepDims() {
    return {{1024, 512, 128, 128}, {512, 256, 32, 32}, {64, 32, 256, 256}, {512, 256, 64, 64}};
}

// Desk-scale variant: every dimension halved.
inline std::vector<TextureDims> DeskSweepDims() {
    return {{512, 256, 64, 64}, {256, 128, 16, 16}, {32, 16, 128, 128}, {256, 128, 32, 32}};
}

struct SweepConfig {
    std::vector<TextureDims> dims = DeskSweepDims();
    std::vector<Camera> poses = SweepPoses();
    int supersample = 3;
    SupersampleMode mode = SupersampleMode::Latin;
    std::uint64_t seed = 1;
    ChannelFormat format = ChannelFormat::RGB8;
    int threads = 0;
    std::filesystem::path out_dir;
    std::function<void(const std::string &)> log;
};

struct SweepRow {
    TextureDims dims;
    std::vector<double> psnr;  // one per pose
    double mean_psnr = 0;
    double synth_seconds = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    nlohmann::json ToJson(const SweepConfig &cfg) const {
        nlohmann::json j;
        j["experiment"] = "resolution-sweep";
        j["supersample"] = cfg.supersample;
        j["mode"] = ToString(cfg.mode);
        j["seed"] = cfg.seed;
        for (const Camera &c : cfg.poses) j["poses"].push_back(c.ToString());
        for (const SweepRow &r : rows)
            j["rows"].push_back({{"dims", r.dims.ToString()},
                                 {"psnr", r.psnr},
                                 {"mean_psnr", r.mean_psnr},
                                 {"synth_seconds", r.synth_seconds}});
        return j;
    }

    std::string ToTable() const {
        std::ostringstream ss;
        ss << std::left << std::setw(20) << "dims";
        if (!rows.empty())
            for (std::size_t p = 0; p < rows.front().psnr.size(); ++p)
                ss << std::setw(10) << ("pose" + std::to_string(p + 1));
        ss << "mean\n" << std::fixed << std::setprecision(2);
        for (const SweepRow &r : rows) {
            ss << std::setw(20) << r.dims.ToString();
            for (double v : r.psnr) ss << std::setw(10) << v;
            ss << r.mean_psnr << "\n";
        }
        return ss.str();
    }
};

inline std::vector<Image> RenderDirectPoses(const Scene &scene, const std::vector<Camera> &poses,
                                            int threads) {
    std::vector<Image> out;
    for (const Camera &c : poses) out.push_back(RenderDirect(scene, c, threads));
    return out;
}

inline SweepRow EvaluateTexture(const LightFieldTexture &tex, const Scene &scene,
                                const std::vector<Camera> &poses, const std::vector<Image> &direct,
                                int threads, const std::filesystem::path &out_dir = {}) {
    SweepRow row;
    row.dims = tex.Dims();
    RenderOptions ro;
    ro.threads = threads;
    ro.background = scene.background;
    for (std::size_t p = 0; p < poses.size(); ++p) {
        Image view = RenderView(tex, scene.model, poses[p], ro);
        row.psnr.push_back(Psnr(view, direct[p]));
        if (!out_dir.empty())
            SavePpm(out_dir / (tex.Dims().ToString() + "_pose" + std::to_string(p + 1) + ".ppm"), view);
    }
    double sum = 0;
    for (double v : row.psnr) sum += v;
    row.mean_psnr = sum / row.psnr.size();
    return row;
}

inline SweepResult RunResolutionSweep(const Scene &scene, const SweepConfig &cfg) {
    std::vector<Image> direct = RenderDirectPoses(scene, cfg.poses, cfg.threads);
    if (!cfg.out_dir.empty())
        for (std::size_t p = 0; p < direct.size(); ++p)
            SavePpm(cfg.out_dir / ("direct_pose" + std::to_string(p + 1) + ".ppm"), direct[p]);
    SweepResult result;
    for (const TextureDims &d : cfg.dims) {
        SynthesisConfig sc;
        sc.dims = d;
        sc.supersample = cfg.supersample;
        sc.mode = cfg.mode;
        sc.seed = cfg.seed;
        sc.format = cfg.format;
        sc.threads = cfg.threads;
        auto t0 = Clock::now();
        LightFieldTexture tex = Synthesize(scene, sc);
        double secs = SecondsSince(t0);
        SweepRow row = EvaluateTexture(tex, scene, cfg.poses, direct, cfg.threads, cfg.out_dir);
        row.synth_seconds = secs;
        if (cfg.log)
            cfg.log(d.ToString() + ": synth " + std::to_string(secs) + " s, mean psnr " +
                    std::to_string(row.mean_psnr));
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace lf4d
