// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

// Acceptance gate: runs the eight end-to-end criteria and prints one
// PASS/FAIL line for each. Pass criterion numbers as arguments to run a
// subset. Exit status is non-zero when any selected criterion fails.

#include <lf4d/experiment.hpp>
#include <lf4d/lf4d_io.hpp>
#include <lf4d/scene_json.hpp>

#include "reference_sampler.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace lf4d;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string Fixed(double v, int digits = 3) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(digits) << v;
    return ss.str();
}

Scene LoadFixture(const std::string &name) { return LoadScene(fs::path(LF4D_SCENES_DIR) / name); }

Vec3 RandomUnit(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    for (;;) {
        Vec3 v(g(rng), g(rng), g(rng));
        if (Length(v) > 1e-9) return Normalize(v);
    }
}

Camera MakeCamera(const Vec3 &pos, const Vec3 &dir, int w, int h) {
    Camera c;
    c.position = pos;
    c.direction = dir;
    c.width = w;
    c.height = h;
    return c;
}

std::string FileBytes(const fs::path &p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path WorkDir() {
    fs::path d = fs::temp_directory_path() / "lf4d_acceptance";
    fs::create_directories(d);
    return d;
}

// Shared between criteria 4 and 7: the 512x256x32x32 composed texture.
std::optional<LightFieldTexture> g_composed_512;

SynthesisConfig SweepSynthConfig(const TextureDims &dims) {
    SynthesisConfig cfg;
    cfg.dims = dims;
    cfg.supersample = 3;
    cfg.mode = SupersampleMode::Latin;
    cfg.seed = 1;
    return cfg;
}

// 1. Parametrization round trips, frame orthonormality, output ranges.
Outcome Criterion1() {
    auto t0 = Clock::now();
    const ProxyModel model({0.3, -0.2, 0.1}, 3.5);
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u01(0, 1), inner(1e-3, 1 - 1e-3), ang(0.05, 0.95);
    double sphere_err = 0, angular_err = 0, ortho_err = 0;
    bool in_range = true;
    for (int i = 0; i < 10000; ++i) {
        SurfaceCoord c{u01(rng), inner(rng)};
        SurfaceCoord back = SphereParam(SpherePoint(c, model), model);
        double du = std::abs(back.u - c.u);
        sphere_err = std::max({sphere_err, std::min(du, 1 - du), std::abs(back.v - c.v)});
        in_range = in_range && back.u >= 0 && back.u <= 1 && back.v >= 0 && back.v <= 1;

        Vec3 n = RandomUnit(rng);
        SurfaceFrame f = LocalFrame(n);
        Vec3 cross = Cross(f.ex, f.ey);
        ortho_err = std::max({ortho_err, std::abs(Dot(f.ex, f.ey)), std::abs(Dot(f.ex, f.ez)),
                              std::abs(Dot(f.ey, f.ez)), std::abs(Length(f.ex) - 1),
                              std::abs(Length(f.ey) - 1), std::abs(Length(f.ez) - 1),
                              Length(cross - f.ez)});

        AngularCoord a{ang(rng), ang(rng)};
        AngularCoord ab = AngularParam(f, AngularDir(f, a));
        angular_err = std::max({angular_err, std::abs(ab.s - a.s), std::abs(ab.t - a.t)});
        in_range = in_range && ab.s >= 0 && ab.s <= 1 && ab.t >= 0 && ab.t <= 1;

        // arbitrary outward directions and surface points also map into [0,1]
        Vec3 d = RandomUnit(rng);
        if (Dot(d, n) < 0) d = -d;
        AngularCoord any = AngularParam(f, d);
        SurfaceCoord sc = SphereParam(model.center + n * model.radius, model);
        in_range = in_range && any.s >= 0 && any.s <= 1 && any.t >= 0 && any.t <= 1 && sc.u >= 0 &&
                   sc.u <= 1 && sc.v >= 0 && sc.v <= 1;
    }
    double secs = SecondsSince(t0);
    Outcome o;
    o.pass = sphere_err <= 1e-6 && angular_err <= 1e-6 && ortho_err <= 1e-9 && in_range && secs < 5;
    std::ostringstream ss;
    ss << "surface round-trip max err " << sphere_err << ", angular " << angular_err << ", frame "
       << ortho_err << ", ranges " << (in_range ? "ok" : "VIOLATED") << ", " << Fixed(secs) << " s";
    o.detail = ss.str();
    return o;
}

// 2. Production sampler against the independent reference.
Outcome Criterion2() {
    auto t0 = Clock::now();
    const ProxyModel model({0, 0, 0}, 3.5);
    LightFieldTexture tex({16, 8, 8, 8}, ChannelFormat::RGBF32);
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> u01(0, 1), dist(0.05, 25);
    for (std::uint64_t i = 0; i < tex.TexelCount(); ++i) tex.StoreOffset(i, {u01(rng), u01(rng), u01(rng)});
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
        Vec3 n = RandomUnit(rng);
        Vec3 p = n * model.radius;
        Vec3 d = RandomUnit(rng);
        if (Dot(d, n) < 0) d = -d;
        Vec3 obs = p + d * dist(rng);
        if (!(Length(obs) > model.radius * (1 + 1e-9))) {
            --k;
            continue;
        }
        Color got = Sample(tex, model, p, obs);
        auto ref = oracle::ReferenceSample(tex, {0, 0, 0}, model.radius, {p.x, p.y, p.z}, {obs.x, obs.y, obs.z});
        worst = std::max(worst, MaxAbsDiff(got, Color(ref[0], ref[1], ref[2])));
    }
    double secs = SecondsSince(t0);
    return {worst <= 1e-6 && secs < 10,
            "10^4 queries, max channel diff " + std::to_string(worst) + ", " + Fixed(secs) + " s"};
}

// 3. Ambient-only constant scene through synth, LF4D save/load and render.
Outcome Criterion3() {
    Scene scene = LoadFixture("composed.json");
    const Color c(0.3, 0.55, 0.8);
    scene.background = c;
    for (Primitive &p : scene.primitives) {
        Material m;
        m.albedo = c;
        m.ka = 1;
        m.kd = 0;
        m.ks = 0;
        p = Primitive(p.Kind(), p.Size(), p.Height(), p.Position(), p.RotationDeg(), m, p.Name());
    }
    SynthesisConfig cfg;
    cfg.dims = {64, 32, 16, 16};
    cfg.supersample = 3;
    cfg.mode = SupersampleMode::Latin;
    LightFieldTexture baked = Synthesize(scene, cfg);
    fs::path file = WorkDir() / "constant.lf4d";
    SaveLf4d(file, baked);
    LightFieldTexture tex = LoadLf4d(file);

    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> radius(4.0, 30.0);
    double worst = 0;
    std::uint64_t covered = 0;
    RenderOptions ro;
    ro.background = {0, 0, 0};  // so uncovered pixels cannot pass by accident
    for (int k = 0; k < 20; ++k) {
        Vec3 pos = RandomUnit(rng) * radius(rng);
        // aim somewhere on the proxy, not always at its center
        Vec3 target = RandomUnit(rng) * 2.0;
        Camera cam = MakeCamera(pos, target - pos, 64, 64);
        RenderStats stats;
        Image img = RenderView(tex, scene.model, cam, ro, &stats);
        covered += stats.covered_pixels;
        CameraBasis b = MakeCameraBasis(cam);
        for (int y = 0; y < cam.height; ++y)
            for (int x = 0; x < cam.width; ++x)
                if (RaySphereHit(PrimaryRay(cam, b, x, y), scene.model))
                    worst = std::max(worst, MaxAbsDiff(c, img(x, y)));
    }
    return {worst <= 1.0 / 255 && covered > 0,
            "20 cameras, " + std::to_string(covered) + " covered pixels, max diff " + Fixed(worst * 255, 3) +
                "/255"};
}

// 4. Mean PSNR vs direct render increases with spatial and with angular resolution.
Outcome Criterion4() {
    auto t0 = Clock::now();
    Scene scene = LoadFixture("composed.json");
    std::vector<Camera> poses = SweepPoses(256, 256);
    std::vector<Image> direct = RenderDirectPoses(scene, poses, 0);
    std::map<std::string, double> mean;
    auto eval = [&](const TextureDims &d) {
        auto key = d.ToString();
        if (mean.count(key)) return mean[key];
        auto ts = Clock::now();
        LightFieldTexture tex = Synthesize(scene, SweepSynthConfig(d));
        double synth_s = SecondsSince(ts);
        SweepRow row = EvaluateTexture(tex, scene, poses, direct, 0);
        std::cerr << "  " << key << ": mean psnr " << Fixed(row.mean_psnr) << " dB (synth " << Fixed(synth_s, 1)
                  << " s)\n";
        if (key == "512x256x32x32") g_composed_512.emplace(std::move(tex));
        return mean[key] = row.mean_psnr;
    };
    std::vector<TextureDims> spatial = {{128, 64, 32, 32}, {256, 128, 32, 32}, {512, 256, 32, 32}};
    std::vector<TextureDims> angular = {{256, 128, 16, 16}, {256, 128, 32, 32}, {256, 128, 64, 64}};
    std::vector<double> sp, an;
    for (const auto &d : spatial) sp.push_back(eval(d));
    for (const auto &d : angular) an.push_back(eval(d));
    bool pass = sp[0] < sp[1] && sp[1] < sp[2] && an[0] < an[1] && an[1] < an[2];
    std::ostringstream ss;
    ss << "spatial 128x64/256x128/512x256: " << Fixed(sp[0]) << " < " << Fixed(sp[1]) << " < " << Fixed(sp[2])
       << " dB; angular 16/32/64: " << Fixed(an[0]) << " < " << Fixed(an[1]) << " < " << Fixed(an[2])
       << " dB (latin ss=3, " << Fixed(SecondsSince(t0), 0) << " s)";
    return {pass, ss.str()};
}

// 5. Far placement renders blurrier than near placement.
Outcome Criterion5() {
    AliasingConfig cfg;  // 512x256x32x32, camera (5,0,0) dir (-2,0,0), 256x256
    cfg.out_dir = WorkDir();
    AliasingResult r = RunAliasing(LoadFixture("aliasing_near.json"), LoadFixture("aliasing_far.json"), cfg);
    std::ostringstream ss;
    ss << "dims " << cfg.dims.ToString() << ", gradient energy near " << Fixed(r.near.texture_energy, 5)
       << " far " << Fixed(r.far.texture_energy, 5) << ", drop " << Fixed(100 * r.energy_drop, 1)
       << "% (required " << Fixed(100 * cfg.min_energy_drop, 0) << "%); informational: texture keeps "
       << Fixed(100 * r.near.texture_energy / r.near.direct_energy, 1) << "% of direct-render energy near, "
       << Fixed(100 * r.far.texture_energy / r.far.direct_energy, 1) << "% far";
    return {r.pass, ss.str()};
}

// 6. Placement verdicts on the composed scene.
Outcome Criterion6() {
    Scene scene = LoadFixture("composed.json");
    auto verdicts = ValidateScene(scene);
    bool ok = verdicts.size() == 7;
    std::vector<std::string> flagged;
    for (const PlacementVerdict &v : verdicts) {
        const Primitive &p = scene.primitives[v.index];
        bool expect_flag = p.Name() == "Purple";
        if (v.placement == Placement::ViewDependent) flagged.push_back(p.Name());
        ok = ok && (v.placement == Placement::ViewDependent) == expect_flag;
        if (expect_flag) ok = ok && std::abs(v.bounding_radius - std::sqrt(1.25)) < 1e-12;
    }
    Scene big;
    big.primitives.push_back(Primitive::Sphere(20, {0, 0, 0}));
    bool big_flagged = ValidateScene(big)[0].placement == Placement::ViewDependent;

    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> ang(-180, 180);
    bool invariant = true;
    for (int k = 0; k < 100; ++k) {
        Mat3 r = Mat3::EulerXYZ({ang(rng), ang(rng), ang(rng)});
        Scene rs = scene;
        rs.primitives.clear();
        for (const Primitive &p : scene.primitives)
            rs.primitives.emplace_back(p.Kind(), p.Size(), p.Height(), r * p.Position(), p.RotationDeg(),
                                       p.GetMaterial(), p.Name());
        auto rv = ValidateScene(rs);
        for (std::size_t i = 0; i < rv.size(); ++i)
            invariant = invariant && rv[i].placement == verdicts[i].placement;
    }
    std::string names;
    for (const auto &n : flagged) names += (names.empty() ? "" : ",") + n;
    return {ok && big_flagged && invariant,
            "view-dependent: [" + names + "], radius-10 object " + (big_flagged ? "flagged" : "NOT flagged") +
                ", rotation invariance " + (invariant ? "held" : "BROKEN") + " over 100 rotations"};
}

// 7. Fetch counter, render time linear in covered pixels, informational fps.
Outcome Criterion7() {
    Scene scene = LoadFixture("composed.json");
    if (!g_composed_512) g_composed_512.emplace(Synthesize(scene, SweepSynthConfig({512, 256, 32, 32})));
    const LightFieldTexture &tex = *g_composed_512;
    RenderOptions ro;
    ro.threads = 1;

    bool exact = true;
    std::vector<std::pair<int, double>> per_pixel;  // size, seconds per covered pixel
    for (int size : {128, 256, 512}) {
        Camera cam = MakeCamera({10, 0, 0}, {-3, 0, 0}, size, size);
        double best = std::numeric_limits<double>::infinity();
        RenderStats stats;
        int reps = size == 512 ? 6 : (size == 256 ? 16 : 48);
        for (int rep = 0; rep < reps; ++rep) {
            auto t0 = Clock::now();
            RenderView(tex, scene.model, cam, ro, &stats);
            best = std::min(best, SecondsSince(t0));
            exact = exact && stats.fetches == 16 * stats.covered_pixels;
        }
        per_pixel.push_back({size, best / stats.covered_pixels});
    }
    double lo = per_pixel[0].second, hi = lo;
    for (auto &[s, t] : per_pixel) {
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    double spread = hi / lo - 1;

    // informational: orbit benchmark at 256x256 on all workers
    RenderOptions all;
    auto frames = OrbitFrames(MakeCamera({10, 0, 0}, {-3, 0, 0}, 256, 256), scene.model, 30);
    auto t0 = Clock::now();
    for (const Camera &cam : frames) {
        RenderStats stats;
        RenderView(tex, scene.model, cam, all, &stats);
        exact = exact && stats.fetches == 16 * stats.covered_pixels;
    }
    double fps = frames.size() / SecondsSince(t0);

    std::ostringstream ss;
    ss << "fetches = 16 x covered " << (exact ? "on every frame" : "VIOLATED") << "; ns per covered pixel";
    for (auto &[s, t] : per_pixel) ss << " " << s << "^2:" << Fixed(t * 1e9, 1);
    ss << " (spread " << Fixed(100 * spread, 1) << "%, limit 15%); fps 512x256x32x32 @256^2 = " << Fixed(fps, 1)
       << " on " << ResolveThreadCount() << " thread(s) (informational)";
    return {exact && spread <= 0.15, ss.str()};
}

// 8. Bit-identical outputs across runs and thread counts.
Outcome Criterion8() {
    Scene scene = LoadFixture("composed.json");
    fs::path dir = WorkDir();
    std::vector<std::string> lf4d, ppm;
    for (int threads : {1, 1, 4}) {
        SynthesisConfig cfg = SweepSynthConfig({64, 32, 16, 16});
        cfg.seed = 8;
        cfg.threads = threads;
        LightFieldTexture tex = Synthesize(scene, cfg);
        fs::path tf = dir / ("det_" + std::to_string(lf4d.size()) + ".lf4d");
        SaveLf4d(tf, tex);
        lf4d.push_back(FileBytes(tf));
        RenderOptions ro;
        ro.threads = threads;
        fs::path pf = dir / ("det_" + std::to_string(ppm.size()) + ".ppm");
        SavePpm(pf, RenderView(LoadLf4d(tf), scene.model, MakeCamera({6, 4, 5}, {-6, -4, -5}, 128, 96), ro));
        ppm.push_back(FileBytes(pf));
        fs::path df = dir / ("det_direct_" + std::to_string(ppm.size()) + ".ppm");
        SavePpm(df, RenderDirect(scene, MakeCamera({0, 10, 0}, {0, -3, 0}, 96, 96), threads));
        ppm.push_back(FileBytes(df));
    }
    bool same_tex = lf4d[0] == lf4d[1] && lf4d[0] == lf4d[2];
    bool same_img = ppm[0] == ppm[2] && ppm[0] == ppm[4] && ppm[1] == ppm[3] && ppm[1] == ppm[5];
    return {same_tex && same_img, std::string("LF4D files ") + (same_tex ? "identical" : "DIFFER") +
                                      ", PPM files " + (same_img ? "identical" : "DIFFER") +
                                      " across 2 runs and threads 1/4"};
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
        {"parametrization round trips", Criterion1},
        {"sampler matches reference", Criterion2},
        {"constant field reconstruction", Criterion3},
        {"resolution quality monotonicity", Criterion4},
        {"far placement is blurrier", Criterion5},
        {"placement restriction", Criterion6},
        {"performance properties", Criterion7},
        {"determinism", Criterion8},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = int(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        Outcome o;
        auto t0 = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first
                  << "): " << o.detail << " [" << Fixed(SecondsSince(t0), 1) << " s]" << std::endl;
    }
    return failures ? 1 : 0;
}
