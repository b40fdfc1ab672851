// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

// Scene documents:
//
// {
//   "model":      {"center": [0, 0, 0], "diameter": 7},
//   "background": [0, 0, 0],
//   "shadows":    true,
//   "light":      {"direction": [-1, 0, 0], "intensity": [1, 1, 1]},
//   "material":   {"ka": 0.1, "kd": 0.7, "ks": 0.2, "shininess": 32},
//   "objects": [
//     {"shape": "cylinder", "dims": {"diameter": 1, "height": 2},
//      "position": [2.62, 0, 0], "rotation_deg": [0, 0, 0],
//      "color": "Purple", "material": {"ks": 0.5}}
//   ]
// }
//
// "color" takes a table name or an [r, g, b] triple; "albedo" is an alias
// for the triple form. The top-level "material" replaces the built-in
// defaults; per-object "material" overrides individual coefficients.

#include <lf4d/errors.hpp>
#include <lf4d/scene.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace lf4d {

inline const std::map<std::string, Color> &NamedColors() {
    static const std::map<std::string, Color> table = {
        {"white", {1, 1, 1}},       {"red", {1, 0, 0}},    {"purple", {0.5, 0, 0.5}},
        {"blue", {0, 0, 1}},        {"black", {0.05, 0.05, 0.05}},
        {"green", {0, 1, 0}},       {"yellow", {1, 1, 0}},
    };
    return table;
}

namespace detail {

using nlohmann::json;

inline Vec3 JsonVec3(const json &j, const std::string &what) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError(what + ": expected an array of 3 numbers");
    Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!IsFinite(v)) throw ParseError(what + ": components must be finite");
    return v;
}

inline Color JsonColor(const json &j, const std::string &what) {
    if (j.is_string()) {
        std::string key = j.get<std::string>();
        for (char &c : key) c = char(std::tolower(static_cast<unsigned char>(c)));
        auto it = NamedColors().find(key);
        if (it == NamedColors().end())
            throw ParseError(what + ": unknown color name '" + j.get<std::string>() + "'");
        return it->second;
    }
    Vec3 v = JsonVec3(j, what);
    return {v.x, v.y, v.z};
}

inline void ApplyMaterial(const json &j, Material &m, const std::string &what) {
    if (!j.is_object()) throw ParseError(what + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string &k = it.key();
        if (k == "ka") m.ka = it->get<double>();
        else if (k == "kd") m.kd = it->get<double>();
        else if (k == "ks") m.ks = it->get<double>();
        else if (k == "shininess") m.shininess = it->get<double>();
        else throw ParseError(what + ": unknown material field '" + k + "'");
    }
}

inline std::string LineContext(const std::string &text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::size_t begin = text.rfind('\n', byte > 0 ? byte - 1 : 0);
    begin = (begin == std::string::npos || byte == 0) ? 0 : begin + 1;
    std::size_t end = text.find('\n', begin);
    std::ostringstream ss;
    ss << "line " << line << ", column " << col << ": "
       << text.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
    return ss.str();
}

inline Scene SceneFromJson(const json &doc) {
    Scene scene;
    if (!doc.is_object()) throw ParseError("scene: top level must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        static const char *known[] = {"model", "background", "shadows", "light", "material",
                                      "objects", "name", "description"};
        if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
            throw ParseError("scene: unknown field '" + it.key() + "'");
    }

    if (doc.contains("model")) {
        const json &m = doc["model"];
        Vec3 c = m.contains("center") ? JsonVec3(m["center"], "model.center") : Vec3{};
        if (!m.contains("diameter")) throw ParseError("model: missing 'diameter'");
        double dia = m["diameter"].get<double>();
        if (!(dia > 0)) throw ParseError("model.diameter must be positive");
        scene.model = ProxyModel(c, dia / 2);
    }
    if (doc.contains("background")) scene.background = JsonColor(doc["background"], "background");
    if (doc.contains("shadows")) scene.shadows = doc["shadows"].get<bool>();
    if (doc.contains("light")) {
        const json &l = doc["light"];
        if (l.contains("direction")) {
            Vec3 d = JsonVec3(l["direction"], "light.direction");
            if (Length(d) == 0) throw ParseError("light.direction must be non-zero");
            scene.light.direction = Normalize(d);
        }
        if (l.contains("intensity")) scene.light.intensity = JsonColor(l["intensity"], "light.intensity");
    }
    Material defaults;
    if (doc.contains("material")) ApplyMaterial(doc["material"], defaults, "material");

    if (doc.contains("objects")) {
        const json &objs = doc["objects"];
        if (!objs.is_array()) throw ParseError("objects: expected an array");
        for (std::size_t i = 0; i < objs.size(); ++i) {
            const json &o = objs[i];
            std::string where = "objects[" + std::to_string(i) + "]";
            if (!o.contains("shape")) throw ParseError(where + ": missing 'shape'");
            std::string shape = o["shape"].get<std::string>();
            const json dims = o.value("dims", json::object());
            Material mat = defaults;
            if (o.contains("color")) mat.albedo = JsonColor(o["color"], where + ".color");
            if (o.contains("albedo")) mat.albedo = JsonColor(o["albedo"], where + ".albedo");
            if (o.contains("material")) ApplyMaterial(o["material"], mat, where + ".material");
            Vec3 pos = o.contains("position") ? JsonVec3(o["position"], where + ".position") : Vec3{};
            Vec3 rot = o.contains("rotation_deg") ? JsonVec3(o["rotation_deg"], where + ".rotation_deg")
                                                  : Vec3{};
            std::string name = o.value("name", o.contains("color") && o["color"].is_string()
                                                   ? o["color"].get<std::string>()
                                                   : std::string{});
            try {
                if (shape == "sphere") {
                    scene.primitives.emplace_back(ShapeKind::Sphere, dims.value("diameter", 1.0), 0,
                                                  pos, rot, mat, name);
                } else if (shape == "cube") {
                    scene.primitives.emplace_back(ShapeKind::Cube, dims.value("side", 1.0), 0, pos,
                                                  rot, mat, name);
                } else if (shape == "cylinder") {
                    scene.primitives.emplace_back(ShapeKind::Cylinder, dims.value("diameter", 1.0),
                                                  dims.value("height", 2.0), pos, rot, mat, name);
                } else {
                    throw ParseError(where + ": unknown shape '" + shape + "'");
                }
            } catch (const DomainError &e) {
                throw ParseError(where + ": " + e.what());
            }
        }
    }
    return scene;
}

}  // namespace detail

inline Scene ParseScene(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("scene JSON syntax error at " + detail::LineContext(text, e.byte > 0 ? e.byte - 1 : 0) +
                         " (" + e.what() + ")");
    }
    try {
        return detail::SceneFromJson(doc);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("scene: ") + e.what());
    }
}

inline Scene LoadScene(const std::filesystem::path &path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open scene file " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    try {
        return ParseScene(ss.str());
    } catch (const ParseError &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace lf4d
