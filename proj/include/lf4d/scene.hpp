// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

// Primitive scenes, the direct ray tracer, and the placement checker that
// decides whether an object can be represented by the proxy texture for an
// unrestricted outside observer.

#include <lf4d/color.hpp>
#include <lf4d/errors.hpp>
#include <lf4d/geometry.hpp>
#include <lf4d/vec.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lf4d {

struct Material {
    Color albedo{1, 1, 1};
    double ka = 0.1;
    double kd = 0.7;
    double ks = 0.2;
    double shininess = 32;

    void Validate() const {
        auto in01 = [](double k) { return k >= 0 && k <= 1; };
        if (!in01(ka) || !in01(kd) || !in01(ks))
            throw DomainError("material coefficients must lie in [0, 1]");
        if (!(shininess > 0)) throw DomainError("material shininess must be positive");
    }
};

struct DirectionalLight {
    Vec3 direction{-1, 0, 0};  // direction the light travels
    Color intensity{1, 1, 1};
};

enum class ShapeKind { Sphere, Cube, Cylinder };

inline const char *ToString(ShapeKind k) {
    switch (k) {
    case ShapeKind::Sphere: return "sphere";
    case ShapeKind::Cube: return "cube";
    case ShapeKind::Cylinder: return "cylinder";
    }
    return "?";
}

// Sphere: size = diameter. Cube: size = side. Cylinder: size = diameter,
// height along the local y axis.
class Primitive {
  public:
    Primitive(ShapeKind kind, double size, double height, const Vec3 &position,
              const Vec3 &rotation_deg, const Material &material, std::string name = {})
        : kind_(kind), size_(size), height_(height), position_(position),
          rotation_deg_(rotation_deg), material_(material), name_(std::move(name)) {
        if (!(size > 0) || (kind == ShapeKind::Cylinder && !(height > 0)))
            throw DomainError("primitive dimensions must be positive");
        if (!IsFinite(position) || !IsFinite(rotation_deg))
            throw DomainError("primitive position and rotation must be finite");
        material_.Validate();
        to_world_ = Mat3::EulerXYZ(rotation_deg);
        to_local_ = to_world_.Transposed();
    }

    static Primitive Sphere(double diameter, const Vec3 &pos, const Material &m = {}) {
        return {ShapeKind::Sphere, diameter, 0, pos, {}, m};
    }
    static Primitive Cube(double side, const Vec3 &pos, const Vec3 &rot = {}, const Material &m = {}) {
        return {ShapeKind::Cube, side, 0, pos, rot, m};
    }
    static Primitive Cylinder(double diameter, double height, const Vec3 &pos, const Vec3 &rot = {},
                              const Material &m = {}) {
        return {ShapeKind::Cylinder, diameter, height, pos, rot, m};
    }

    ShapeKind Kind() const { return kind_; }
    double Size() const { return size_; }
    double Height() const { return height_; }
    const Vec3 &Position() const { return position_; }
    const Vec3 &RotationDeg() const { return rotation_deg_; }
    const Material &GetMaterial() const { return material_; }
    const std::string &Name() const { return name_; }
    const Mat3 &ToWorld() const { return to_world_; }

    double BoundingRadius() const {
        switch (kind_) {
        case ShapeKind::Sphere: return size_ / 2;
        case ShapeKind::Cube: return std::sqrt(3.0) / 2 * size_;
        case ShapeKind::Cylinder: return std::hypot(size_ / 2, height_ / 2);
        }
        return 0;
    }

    // Nearest hit with kRayEpsilon <= t < t_max; returns t and the world normal.
    std::optional<std::pair<double, Vec3>> Intersect(const Ray &ray, double t_max) const {
        // bounding-sphere rejection
        Vec3 oc = ray.origin - position_;
        double b = Dot(oc, ray.direction);
        double br = BoundingRadius();
        double disc = b * b - (LengthSquared(oc) - br * br);
        if (disc < 0) return std::nullopt;
        double root = std::sqrt(disc);
        if (-b + root < kRayEpsilon || -b - root >= t_max) return std::nullopt;

        Vec3 o = to_local_ * oc;
        Vec3 d = to_local_ * ray.direction;
        std::optional<std::pair<double, Vec3>> hit;
        switch (kind_) {
        case ShapeKind::Sphere: hit = IntersectSphere(o, d); break;
        case ShapeKind::Cube: hit = IntersectCube(o, d); break;
        case ShapeKind::Cylinder: hit = IntersectCylinder(o, d); break;
        }
        if (!hit || hit->first >= t_max) return std::nullopt;
        hit->second = Normalize(to_world_ * hit->second);
        return hit;
    }

  private:
    std::optional<std::pair<double, Vec3>> IntersectSphere(const Vec3 &o, const Vec3 &d) const {
        double r = size_ / 2;
        double b = Dot(o, d);
        double disc = b * b - (LengthSquared(o) - r * r);
        if (disc < 0) return std::nullopt;
        double root = std::sqrt(disc);
        double t = -b - root;
        if (t < kRayEpsilon) t = -b + root;
        if (t < kRayEpsilon) return std::nullopt;
        return std::pair{t, (o + d * t) / r};
    }

    std::optional<std::pair<double, Vec3>> IntersectCube(const Vec3 &o, const Vec3 &d) const {
        double h = size_ / 2;
        double t_near = -std::numeric_limits<double>::infinity();
        double t_far = std::numeric_limits<double>::infinity();
        int near_axis = -1, far_axis = -1;
        for (int a = 0; a < 3; ++a) {
            if (d[a] == 0) {
                if (o[a] < -h || o[a] > h) return std::nullopt;
                continue;
            }
            double t0 = (-h - o[a]) / d[a];
            double t1 = (h - o[a]) / d[a];
            if (t0 > t1) std::swap(t0, t1);
            if (t0 > t_near) {
                t_near = t0;
                near_axis = a;
            }
            if (t1 < t_far) {
                t_far = t1;
                far_axis = a;
            }
        }
        if (t_near > t_far) return std::nullopt;
        auto axis_normal = [](int a, double sign) {
            Vec3 n;
            (a == 0 ? n.x : (a == 1 ? n.y : n.z)) = sign;
            return n;
        };
        if (t_near >= kRayEpsilon && near_axis >= 0)
            return std::pair{t_near, axis_normal(near_axis, d[near_axis] > 0 ? -1.0 : 1.0)};
        if (t_far >= kRayEpsilon && far_axis >= 0)
            return std::pair{t_far, axis_normal(far_axis, d[far_axis] > 0 ? 1.0 : -1.0)};
        return std::nullopt;
    }

    std::optional<std::pair<double, Vec3>> IntersectCylinder(const Vec3 &o, const Vec3 &d) const {
        double r = size_ / 2, hh = height_ / 2;
        double best = std::numeric_limits<double>::infinity();
        Vec3 normal;
        double a = d.x * d.x + d.z * d.z;
        if (a > 0) {
            double b = o.x * d.x + o.z * d.z;
            double c = o.x * o.x + o.z * o.z - r * r;
            double disc = b * b - a * c;
            if (disc >= 0) {
                double root = std::sqrt(disc);
                for (double t : {(-b - root) / a, (-b + root) / a}) {
                    double y = o.y + d.y * t;
                    if (t >= kRayEpsilon && t < best && std::abs(y) <= hh) {
                        best = t;
                        normal = Vec3(o.x + d.x * t, 0, o.z + d.z * t) / r;
                    }
                }
            }
        }
        if (d.y != 0) {
            for (double cap : {-hh, hh}) {
                double t = (cap - o.y) / d.y;
                double x = o.x + d.x * t, z = o.z + d.z * t;
                if (t >= kRayEpsilon && t < best && x * x + z * z <= r * r) {
                    best = t;
                    normal = Vec3(0, cap > 0 ? 1 : -1, 0);
                }
            }
        }
        if (best == std::numeric_limits<double>::infinity()) return std::nullopt;
        return std::pair{best, normal};
    }

    ShapeKind kind_;
    double size_, height_;
    Vec3 position_, rotation_deg_;
    Material material_;
    std::string name_;
    Mat3 to_world_, to_local_;
};

struct Scene {
    std::vector<Primitive> primitives;
    DirectionalLight light;
    ProxyModel model{{0, 0, 0}, 3.5};
    Color background{0, 0, 0};
    bool shadows = true;
};

struct SceneHit {
    Vec3 point;
    Vec3 normal;
    double t = 0;
    const Primitive *primitive = nullptr;

    const Material &GetMaterial() const { return primitive->GetMaterial(); }
};

inline std::optional<SceneHit> Intersect(const Scene &scene, const Ray &ray,
                                         double t_max = std::numeric_limits<double>::infinity()) {
    std::optional<SceneHit> best;
    for (const Primitive &p : scene.primitives) {
        auto h = p.Intersect(ray, best ? best->t : t_max);
        if (h) best = SceneHit{ray.At(h->first), h->second, h->first, &p};
    }
    return best;
}

inline bool Occluded(const Scene &scene, const Ray &ray) {
    for (const Primitive &p : scene.primitives)
        if (p.Intersect(ray, std::numeric_limits<double>::infinity())) return true;
    return false;
}

// Ambient + Lambert diffuse + Blinn-Phong specular under one directional
// light, with a hard shadow test. `view_dir` is the incoming ray direction.
inline Color Shade(const SceneHit &hit, const Vec3 &view_dir, const Scene &scene) {
    const Material &m = hit.GetMaterial();
    Vec3 l = -Normalize(scene.light.direction);
    Vec3 v = -view_dir;
    Vec3 n = hit.normal;
    Color c = m.albedo * m.ka;

    double ndotl = std::max(0.0, Dot(n, l));
    Vec3 half = l + v;
    double hl = Length(half);
    double ndoth = hl > 0 ? std::max(0.0, Dot(n, half / hl)) : 0.0;
    Color diffuse = m.albedo * scene.light.intensity * (m.kd * ndotl);
    Color specular = scene.light.intensity * (m.ks * std::pow(ndoth, m.shininess));
    Color direct = diffuse + specular;
    if (direct.MaxComponent() <= 0) return c.Clamped();

    if (scene.shadows && Occluded(scene, Ray{hit.point + n * 1e-4, l})) return c.Clamped();
    return (c + direct).Clamped();
}

inline Color Trace(const Scene &scene, const Ray &ray) {
    auto hit = Intersect(scene, ray);
    if (!hit) return scene.background;
    return Shade(*hit, ray.direction, scene);
}

enum class Placement { Unrestricted, ViewDependent };

inline const char *ToString(Placement p) {
    return p == Placement::Unrestricted ? "unrestricted" : "view-dependent";
}

struct PlacementVerdict {
    std::size_t index = 0;
    Placement placement = Placement::Unrestricted;
    double bounding_radius = 0;
    // model radius - (|center - model center| + bounding radius); negative
    // when the bounding sphere pokes out of the proxy.
    double margin = 0;
    // For each supplied observer: whether the object's bounding cone seen from
    // the observer falls inside the proxy's silhouette (so the object is
    // projected onto the proxy surface).
    std::vector<bool> projects_onto_model;
};

// Angular containment of the bounding sphere (center c, radius r) inside the
// proxy silhouette, both seen from observer o.
inline bool ProjectsOntoModel(const Vec3 &o, const Vec3 &c, double r, const ProxyModel &model) {
    double dm = Distance(o, model.center);
    double dc = Distance(o, c);
    if (dm <= model.radius || dc <= r) return false;
    double model_half = std::asin(model.radius / dm);
    double obj_half = std::asin(r / dc);
    double sep = std::acos(Clamp(Dot(Normalize(c - o), Normalize(model.center - o)), -1.0, 1.0));
    return sep + obj_half <= model_half;
}

inline std::vector<PlacementVerdict> ValidateScene(const Scene &scene,
                                                   const std::vector<Vec3> &observers = {}) {
    std::vector<PlacementVerdict> out;
    for (std::size_t i = 0; i < scene.primitives.size(); ++i) {
        const Primitive &p = scene.primitives[i];
        PlacementVerdict v;
        v.index = i;
        v.bounding_radius = p.BoundingRadius();
        v.margin = scene.model.radius - (Distance(p.Position(), scene.model.center) + v.bounding_radius);
        v.placement = v.margin >= 0 ? Placement::Unrestricted : Placement::ViewDependent;
        for (const Vec3 &o : observers)
            v.projects_onto_model.push_back(v.placement == Placement::Unrestricted ||
                                            ProjectsOntoModel(o, p.Position(), v.bounding_radius,
                                                              scene.model));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace lf4d
