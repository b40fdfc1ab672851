// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

// lf4d: bake, render, compare and benchmark 2+2D light-field textures.
//
// Exit codes: 0 success, 1 unexpected failure, 2 usage error, 3 I/O or file
// format error, 4 validation failure (scene parse, placement with --strict,
// precondition), 5 threshold not met.

#include <lf4d/experiment.hpp>
#include <lf4d/lf4d_io.hpp>
#include <lf4d/scene_json.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <thread>

using namespace lf4d;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3, kValidation = 4, kThreshold = 5 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ThresholdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> Split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    for (;;) {
        std::size_t end = s.find(sep, begin);
        out.push_back(s.substr(begin, end == std::string::npos ? std::string::npos : end - begin));
        if (end == std::string::npos) return out;
        begin = end + 1;
    }
}

template <typename T>
T ParseNumber(const std::string &s, const std::string &what) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw UsageError("invalid number '" + s + "' for " + what);
    return v;
}

Vec3 ParseVec3(const std::string &s, const std::string &what) {
    auto parts = Split(s, ',');
    if (parts.size() != 3) throw UsageError(what + " expects x,y,z (got '" + s + "')");
    Vec3 v(ParseNumber<double>(parts[0], what), ParseNumber<double>(parts[1], what),
           ParseNumber<double>(parts[2], what));
    if (!IsFinite(v)) throw UsageError(what + " must be finite");
    return v;
}

TextureDims ParseDims(const std::string &s) {
    auto parts = Split(s, 'x');
    if (parts.size() != 4) throw UsageError("dims expect UxVxSxT (got '" + s + "')");
    TextureDims d{ParseNumber<std::uint32_t>(parts[0], "dims"), ParseNumber<std::uint32_t>(parts[1], "dims"),
                  ParseNumber<std::uint32_t>(parts[2], "dims"), ParseNumber<std::uint32_t>(parts[3], "dims")};
    if (d.u < 2 || d.v < 2 || d.s < 2 || d.t < 2) throw UsageError("every texture dimension must be >= 2");
    return d;
}

std::pair<int, int> ParseSize(const std::string &s) {
    auto parts = Split(s, 'x');
    if (parts.size() == 1) parts.push_back(parts[0]);
    if (parts.size() != 2) throw UsageError("size expects WxH (got '" + s + "')");
    int w = ParseNumber<int>(parts[0], "size"), h = ParseNumber<int>(parts[1], "size");
    if (w < 1 || h < 1) throw UsageError("image size must be positive");
    return {w, h};
}

Rect ParseRect(const std::string &s) {
    auto parts = Split(s, ',');
    if (parts.size() != 4) throw UsageError("region expects x,y,w,h (got '" + s + "')");
    return {ParseNumber<int>(parts[0], "region"), ParseNumber<int>(parts[1], "region"),
            ParseNumber<int>(parts[2], "region"), ParseNumber<int>(parts[3], "region")};
}

ChannelFormat ParseFormat(const std::string &s) {
    if (s == "rgb8") return ChannelFormat::RGB8;
    if (s == "rgbf32") return ChannelFormat::RGBF32;
    throw UsageError("unknown channel format '" + s + "' (expected rgb8 or rgbf32)");
}

SupersampleMode ParseMode(const std::string &s) {
    try {
        return ParseSupersampleMode(s);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

std::string FormatSeconds(double s) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << s;
    return ss.str();
}

std::string MachineDescription() {
    std::string cpu = "unknown cpu";
    std::ifstream info("/proc/cpuinfo");
    for (std::string line; std::getline(info, line);) {
        if (line.rfind("model name", 0) == 0) {
            auto colon = line.find(':');
            if (colon != std::string::npos) cpu = line.substr(colon + 2);
            break;
        }
    }
    return cpu + ", " + std::to_string(std::thread::hardware_concurrency()) + " hardware threads";
}

// Flags shared by the camera-taking commands.
struct CameraFlags {
    std::string pos = "10,0,0";
    std::string dir = "-3,0,0";
    std::string up = "0,1,0";
    std::string size = "256x256";
    double fov = 60;

    void Add(CLI::App *app) {
        app->add_option("--pos", pos, "camera position x,y,z")->capture_default_str();
        app->add_option("--dir", dir, "view direction x,y,z (need not be unit length)")->capture_default_str();
        app->add_option("--up", up, "up hint x,y,z")->capture_default_str();
        app->add_option("--fov", fov, "horizontal field of view in degrees")->capture_default_str();
        app->add_option("--size", size, "image size WxH")->capture_default_str();
    }

    Camera Build() const {
        Camera c;
        c.position = ParseVec3(pos, "--pos");
        c.direction = ParseVec3(dir, "--dir");
        c.up = ParseVec3(up, "--up");
        c.fov_deg = fov;
        std::tie(c.width, c.height) = ParseSize(size);
        if (Length(c.direction) == 0) throw UsageError("--dir must be non-zero");
        if (Length(c.up) == 0) throw UsageError("--up must be non-zero");
        try {
            c.Validate();
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        return c;
    }
};

// Proxy model for the texture commands: taken from a scene file when given,
// otherwise a sphere of the given diameter at the origin.
struct ModelFlags {
    std::string scene;
    double diameter = 7;
    std::string center = "0,0,0";

    void Add(CLI::App *app) {
        app->add_option("--scene", scene, "scene file supplying the proxy model and background");
        app->add_option("--model-diameter", diameter, "proxy sphere diameter")->capture_default_str();
        app->add_option("--model-center", center, "proxy sphere center x,y,z")->capture_default_str();
    }

    std::pair<ProxyModel, Color> Build() const {
        if (!scene.empty()) {
            Scene s = LoadScene(scene);
            return {s.model, s.background};
        }
        if (!(diameter > 0)) throw UsageError("--model-diameter must be positive");
        return {ProxyModel(ParseVec3(center, "--model-center"), diameter / 2), Color{}};
    }
};

struct Common {
    int threads = 0;
    bool json = false;
};

void AddThreads(CLI::App *app, Common &c) {
    app->add_option("--threads", c.threads, "worker threads (default: $LF_THREADS, else all cores)")
        ->check(CLI::NonNegativeNumber);
}

void EmitCamera(const Camera &cam, bool gamma, bool json_mode) {
    if (!json_mode) std::cout << "camera: " << cam.ToString() << " gamma=" << (gamma ? "2.2" : "off") << "\n";
}

json CameraJson(const Camera &cam, bool gamma) {
    return {{"position", {cam.position.x, cam.position.y, cam.position.z}},
            {"direction", {cam.direction.x, cam.direction.y, cam.direction.z}},
            {"fov_deg", cam.fov_deg},
            {"size", {cam.width, cam.height}},
            {"spec", cam.ToString()},
            {"gamma", gamma ? "2.2" : "off"}};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bake, render and evaluate 2+2D light-field textures on a spherical proxy."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "lf4d 1.0");
    Common common;

    // synth
    CLI::App *synth = app.add_subcommand("synth", "bake a scene into an LF4D texture");
    std::string synth_scene, synth_out, synth_dims = "64x32x16x16", synth_mode = "none",
                                        synth_format = "rgb8";
    int synth_ss = 1;
    std::uint64_t synth_seed = 1;
    bool synth_quiet = false;
    synth->add_option("scene", synth_scene, "scene JSON file")->required();
    synth->add_option("-o,--out", synth_out, "output LF4D file")->required();
    synth->add_option("--dims", synth_dims, "texture dims UxVxSxT")->capture_default_str();
    synth->add_option("--ss", synth_ss, "supersample factor")->capture_default_str()->check(CLI::PositiveNumber);
    synth->add_option("--mode", synth_mode, "supersample mode: none, latin, tensor")->capture_default_str();
    synth->add_option("--seed", synth_seed, "jitter seed")->capture_default_str();
    synth->add_option("--format", synth_format, "channel format: rgb8, rgbf32")->capture_default_str();
    synth->add_flag("-q,--quiet", synth_quiet, "no progress on stderr");
    synth->add_flag("--json", common.json, "print a JSON summary");
    AddThreads(synth, common);

    // render
    CLI::App *render = app.add_subcommand("render", "render a view from an LF4D texture");
    std::string render_tex, render_out;
    bool render_gamma = false, render_shared = false;
    CameraFlags render_cam;
    ModelFlags render_model;
    render->add_option("texture", render_tex, "LF4D texture")->required();
    render->add_option("-o,--out", render_out, "output PPM")->required();
    render_cam.Add(render);
    render_model.Add(render);
    render->add_flag("--gamma", render_gamma, "gamma 2.2 encode the output");
    render->add_flag("--shared-direction", render_shared, "use one view direction for all four spatial corners");
    render->add_flag("--json", common.json, "print a JSON summary");
    AddThreads(render, common);

    // direct
    CLI::App *direct = app.add_subcommand("direct", "ray trace the scene objects directly");
    std::string direct_scene, direct_out;
    bool direct_gamma = false;
    CameraFlags direct_cam;
    direct->add_option("scene", direct_scene, "scene JSON file")->required();
    direct->add_option("-o,--out", direct_out, "output PPM")->required();
    direct_cam.Add(direct);
    direct->add_flag("--gamma", direct_gamma, "gamma 2.2 encode the output");
    direct->add_flag("--json", common.json, "print a JSON summary");
    AddThreads(direct, common);

    // compare
    CLI::App *compare = app.add_subcommand("compare", "PSNR and gradient energy of two PPM images");
    std::string cmp_a, cmp_b, cmp_region;
    double cmp_min_psnr = -std::numeric_limits<double>::infinity();
    compare->add_option("a", cmp_a, "first image")->required();
    compare->add_option("b", cmp_b, "second image")->required();
    compare->add_option("--region", cmp_region, "restrict to x,y,w,h");
    CLI::Option *min_psnr_opt = compare->add_option("--min-psnr", cmp_min_psnr, "fail (exit 5) below this PSNR");
    compare->add_flag("--json", common.json, "print the report as JSON");

    // validate
    CLI::App *validate = app.add_subcommand("validate", "check object placement against the proxy");
    std::string val_scene;
    std::vector<std::string> val_observers;
    bool val_strict = false;
    validate->add_option("scene", val_scene, "scene JSON file")->required();
    validate->add_option("--observer", val_observers, "observer position x,y,z (repeatable)");
    validate->add_flag("--strict", val_strict, "exit 4 when any object is view-dependent");
    validate->add_flag("--json", common.json, "print verdicts as JSON");

    // bench
    CLI::App *bench = app.add_subcommand("bench", "time texture renders over an orbit");
    std::string bench_tex;
    int bench_frames = 30;
    CameraFlags bench_cam;
    ModelFlags bench_model;
    bench->add_option("texture", bench_tex, "LF4D texture")->required();
    bench->add_option("--frames", bench_frames, "orbit frames")->capture_default_str()->check(CLI::PositiveNumber);
    bench_cam.Add(bench);
    bench_model.Add(bench);
    bench->add_flag("--json", common.json, "print a JSON summary");
    AddThreads(bench, common);

    // experiment
    CLI::App *experiment = app.add_subcommand("experiment", "run a bundled experiment");
    std::string exp_name, exp_out, exp_scenes = LF4D_SCENES_DIR, exp_mode;
    std::vector<std::string> exp_configs;
    bool exp_full = false;
    int exp_ss = 0;
    std::uint64_t exp_seed = 1;
    std::string exp_size = "256x256";
    double exp_min_drop = 0.20;
    experiment->add_option("name", exp_name, "aliasing or resolution-sweep")
        ->required()
        ->check(CLI::IsMember({"aliasing", "resolution-sweep"}));
    experiment->add_option("--out-dir", exp_out, "write images and report.json here");
    experiment->add_option("--scenes-dir", exp_scenes, "directory holding the scene fixtures")->capture_default_str();
    experiment->add_flag("--full", exp_full, "full-scale texture dims instead of the halved desk scale");
    experiment->add_option("--configs", exp_configs, "override the texture dims list (UxVxSxT ...)");
    experiment->add_option("--ss", exp_ss, "supersample factor (aliasing 1, sweep 3)")->check(CLI::PositiveNumber);
    experiment->add_option("--mode", exp_mode, "supersample mode (aliasing none, sweep latin)");
    experiment->add_option("--seed", exp_seed, "jitter seed")->capture_default_str();
    experiment->add_option("--size", exp_size, "render size WxH")->capture_default_str();
    experiment->add_option("--min-drop", exp_min_drop, "aliasing: required far/near energy drop")->capture_default_str();
    experiment->add_flag("--json", common.json, "print the report as JSON");
    AddThreads(experiment, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*synth) {
            SynthesisConfig cfg;
            cfg.dims = ParseDims(synth_dims);
            cfg.supersample = synth_ss;
            cfg.mode = ParseMode(synth_mode);
            cfg.seed = synth_seed;
            cfg.format = ParseFormat(synth_format);
            cfg.threads = common.threads;
            Scene scene = LoadScene(synth_scene);
            int last_pct = -1;
            if (!synth_quiet)
                cfg.progress = [&](std::uint64_t done, std::uint64_t total) {
                    int pct = int(100 * done / total);
                    if (pct / 10 != last_pct / 10 || done == total) {
                        std::cerr << "\rsynth " << pct << "%" << (done == total ? "\n" : "") << std::flush;
                        last_pct = pct;
                    }
                };
            SynthesisStats stats;
            auto t0 = Clock::now();
            LightFieldTexture tex = Synthesize(scene, cfg, &stats);
            double secs = SecondsSince(t0);
            SaveLf4d(synth_out, tex);
            if (common.json) {
                std::cout << json{{"command", "synth"},
                                  {"dims", cfg.dims.ToString()},
                                  {"format", ToString(cfg.format)},
                                  {"texels", stats.texels},
                                  {"rays", stats.rays},
                                  {"supersample", cfg.supersample},
                                  {"mode", ToString(cfg.mode)},
                                  {"seed", cfg.seed},
                                  {"threads", stats.threads},
                                  {"seconds", secs},
                                  {"out", synth_out}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "dims=" << cfg.dims.ToString() << " texels=" << stats.texels
                          << " rays=" << stats.rays << " format=" << ToString(cfg.format)
                          << " ss=" << cfg.supersample << " mode=" << ToString(cfg.mode)
                          << " seed=" << cfg.seed << " threads=" << stats.threads
                          << " elapsed=" << FormatSeconds(secs) << "s out=" << synth_out << "\n";
            }
            return kOk;
        }

        if (*render) {
            Camera cam = render_cam.Build();
            auto [model, background] = render_model.Build();
            LightFieldTexture tex = LoadLf4d(render_tex);
            EmitCamera(cam, render_gamma, common.json);
            RenderOptions opts;
            opts.threads = common.threads;
            opts.background = background;
            opts.sample.shared_direction = render_shared;
            RenderStats stats;
            auto t0 = Clock::now();
            Image img = RenderView(tex, model, cam, opts, &stats);
            double secs = SecondsSince(t0);
            SavePpm(render_out, img, render_gamma);
            if (common.json) {
                std::cout << json{{"command", "render"},
                                  {"camera", CameraJson(cam, render_gamma)},
                                  {"texture", tex.Dims().ToString()},
                                  {"covered_pixels", stats.covered_pixels},
                                  {"fetches", stats.fetches},
                                  {"seconds", secs},
                                  {"out", render_out}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "texture=" << tex.Dims().ToString() << " covered=" << stats.covered_pixels
                          << " fetches=" << stats.fetches << " elapsed=" << FormatSeconds(secs)
                          << "s out=" << render_out << "\n";
            }
            return kOk;
        }

        if (*direct) {
            Camera cam = direct_cam.Build();
            Scene scene = LoadScene(direct_scene);
            EmitCamera(cam, direct_gamma, common.json);
            auto t0 = Clock::now();
            Image img = RenderDirect(scene, cam, common.threads);
            double secs = SecondsSince(t0);
            SavePpm(direct_out, img, direct_gamma);
            if (common.json) {
                std::cout << json{{"command", "direct"},
                                  {"camera", CameraJson(cam, direct_gamma)},
                                  {"seconds", secs},
                                  {"out", direct_out}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "elapsed=" << FormatSeconds(secs) << "s out=" << direct_out << "\n";
            }
            return kOk;
        }

        if (*compare) {
            std::optional<Rect> region;
            if (!cmp_region.empty()) region = ParseRect(cmp_region);
            Image a = LoadPpm(cmp_a), b = LoadPpm(cmp_b);
            if (a.Width() != b.Width() || a.Height() != b.Height())
                throw UsageError("image sizes differ: " + std::to_string(a.Width()) + "x" +
                                 std::to_string(a.Height()) + " vs " + std::to_string(b.Width()) + "x" +
                                 std::to_string(b.Height()));
            if (region && !region->Within(a)) throw UsageError("--region lies outside the images");
            MetricReport rep = Compare(a, b, region);
            bool ok = !*min_psnr_opt || rep.psnr >= cmp_min_psnr;
            if (common.json) {
                json j = rep.ToJson();
                if (*min_psnr_opt) {
                    j["min_psnr"] = cmp_min_psnr;
                    j["pass"] = ok;
                }
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << rep.ToKeyValue() << "\n";
            }
            if (!ok) {
                std::cerr << "psnr below threshold " << cmp_min_psnr << " dB\n";
                return kThreshold;
            }
            return kOk;
        }

        if (*validate) {
            Scene scene = LoadScene(val_scene);
            std::vector<Vec3> observers;
            for (const std::string &o : val_observers) observers.push_back(ParseVec3(o, "--observer"));
            auto verdicts = ValidateScene(scene, observers);
            bool all_ok = true;
            json j = json::array();
            for (const PlacementVerdict &v : verdicts) {
                const Primitive &p = scene.primitives[v.index];
                all_ok = all_ok && v.placement == Placement::Unrestricted;
                json e{{"index", v.index},
                       {"name", p.Name()},
                       {"shape", ToString(p.Kind())},
                       {"placement", ToString(v.placement)},
                       {"bounding_radius", v.bounding_radius},
                       {"margin", v.margin}};
                if (!observers.empty()) e["projects_onto_model"] = v.projects_onto_model;
                j.push_back(e);
                if (!common.json) {
                    std::cout << v.index << " " << (p.Name().empty() ? ToString(p.Kind()) : p.Name())
                              << " " << ToString(p.Kind()) << " " << ToString(v.placement)
                              << " bound=" << v.bounding_radius << " margin=" << v.margin;
                    for (std::size_t k = 0; k < v.projects_onto_model.size(); ++k)
                        std::cout << " observer" << k << "=" << (v.projects_onto_model[k] ? "ok" : "outside");
                    std::cout << "\n";
                }
            }
            if (common.json) std::cout << json{{"command", "validate"}, {"verdicts", j}}.dump(2) << "\n";
            return (val_strict && !all_ok) ? kValidation : kOk;
        }

        if (*bench) {
            Camera tmpl = bench_cam.Build();
            auto [model, background] = bench_model.Build();
            LightFieldTexture tex = LoadLf4d(bench_tex);
            int threads = ResolveThreadCount(common.threads);
            auto frames = OrbitFrames(tmpl, model, bench_frames);
            RenderOptions opts;
            opts.threads = threads;
            opts.background = background;
            std::vector<double> times;
            std::uint64_t fetches = 0, covered = 0;
            bool exact = true;
            for (const Camera &cam : frames) {
                RenderStats stats;
                auto t0 = Clock::now();
                RenderView(tex, model, cam, opts, &stats);
                times.push_back(SecondsSince(t0));
                fetches += stats.fetches;
                covered += stats.covered_pixels;
                exact = exact && stats.fetches == 16 * stats.covered_pixels;
            }
            double total = 0, worst = 0;
            for (double t : times) {
                total += t;
                worst = std::max(worst, t);
            }
            double mean_fps = times.size() / total;
            double min_fps = worst > 0 ? 1 / worst : std::numeric_limits<double>::infinity();
            double per_pixel = covered ? double(fetches) / covered : 0;
            if (common.json) {
                std::cout << json{{"command", "bench"},
                                  {"texture", tex.Dims().ToString()},
                                  {"frames", bench_frames},
                                  {"size", {tmpl.width, tmpl.height}},
                                  {"threads", threads},
                                  {"mean_fps", mean_fps},
                                  {"min_fps", min_fps},
                                  {"covered_pixels", covered},
                                  {"fetches", fetches},
                                  {"fetches_per_covered_pixel", per_pixel},
                                  {"fetch_count_exact", exact},
                                  {"machine", MachineDescription()}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "texture=" << tex.Dims().ToString() << " frames=" << bench_frames
                          << " size=" << tmpl.width << "x" << tmpl.height << " threads=" << threads << "\n"
                          << "mean_fps=" << mean_fps << " min_fps=" << min_fps << "\n"
                          << "fetches=" << fetches << " covered=" << covered
                          << " fetches_per_pixel=" << per_pixel << " exact=" << (exact ? "yes" : "no") << "\n"
                          << "machine: " << MachineDescription() << "\n";
            }
            return kOk;
        }

        if (*experiment) {
            std::filesystem::path scenes_dir = exp_scenes;
            std::filesystem::path out_dir = exp_out;
            if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
            auto [w, h] = ParseSize(exp_size);
            auto log = [&](const std::string &msg) { std::cerr << msg << "\n"; };
            json report;
            int code = kOk;

            if (exp_name == "aliasing") {
                for (const char *f : {"aliasing_near.json", "aliasing_far.json"})
                    if (!std::filesystem::exists(scenes_dir / f))
                        throw IoError("missing fixture " + (scenes_dir / f).string());
                AliasingConfig cfg;
                cfg.dims = exp_full ? TextureDims{1024, 512, 32, 32} : TextureDims{512, 256, 32, 32};
                if (exp_configs.size() > 1) throw UsageError("aliasing takes a single --configs entry");
                if (!exp_configs.empty()) cfg.dims = ParseDims(exp_configs[0]);
                if (exp_ss) cfg.supersample = exp_ss;
                if (!exp_mode.empty()) cfg.mode = ParseMode(exp_mode);
                cfg.seed = exp_seed;
                cfg.camera.width = w;
                cfg.camera.height = h;
                cfg.threads = common.threads;
                cfg.min_energy_drop = exp_min_drop;
                cfg.out_dir = out_dir;
                cfg.log = log;
                AliasingResult r = RunAliasing(LoadScene(scenes_dir / "aliasing_near.json"),
                                               LoadScene(scenes_dir / "aliasing_far.json"), cfg);
                report = r.ToJson(cfg);
                if (!common.json)
                    std::cout << "camera: " << cfg.camera.ToString() << "\n"
                              << "near: energy=" << r.near.texture_energy << " direct=" << r.near.direct_energy
                              << " psnr=" << r.near.psnr_vs_direct << "\n"
                              << "far:  energy=" << r.far.texture_energy << " direct=" << r.far.direct_energy
                              << " psnr=" << r.far.psnr_vs_direct << "\n"
                              << "energy_drop=" << r.energy_drop << " required=" << cfg.min_energy_drop
                              << " " << (r.pass ? "PASS" : "FAIL") << "\n";
                if (!r.pass) code = kThreshold;
            } else {
                if (!std::filesystem::exists(scenes_dir / "composed.json"))
                    throw IoError("missing fixture " + (scenes_dir / "composed.json").string());
                SweepConfig cfg;
                cfg.dims = exp_full ? FullSweepDims() : DeskSweepDims();
                if (!exp_configs.empty()) {
                    cfg.dims.clear();
                    for (const std::string &c : exp_configs) cfg.dims.push_back(ParseDims(c));
                }
                if (exp_ss) cfg.supersample = exp_ss;
                if (!exp_mode.empty()) cfg.mode = ParseMode(exp_mode);
                cfg.seed = exp_seed;
                cfg.poses = SweepPoses(w, h);
                cfg.threads = common.threads;
                cfg.out_dir = out_dir;
                cfg.log = log;
                SweepResult r = RunResolutionSweep(LoadScene(scenes_dir / "composed.json"), cfg);
                report = r.ToJson(cfg);
                if (!common.json) {
                    for (std::size_t p = 0; p < cfg.poses.size(); ++p)
                        std::cout << "pose" << p + 1 << ": " << cfg.poses[p].ToString() << "\n";
                    std::cout << r.ToTable();
                }
            }
            if (!out_dir.empty()) {
                std::ofstream os(out_dir / "report.json");
                os << report.dump(2) << "\n";
                if (!os) throw IoError("failed writing " + (out_dir / "report.json").string());
            }
            if (common.json) std::cout << report.dump(2) << "\n";
            return code;
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const FormatError &e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kIo;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kValidation;
    } catch (const PreconditionError &e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kValidation;
    } catch (const DomainError &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kValidation;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
