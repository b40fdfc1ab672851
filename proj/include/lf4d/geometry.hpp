// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

// Spherical proxy geometry: surface (u, v) and per-point angular (s, t)
// parametrizations, their inverses, and the local tangent frame that ties
// them together.
//
// Conventions: right-handed world, global up +y. Azimuth is measured with
// atan2(x, z), so u = 0.5 faces +z and u = 0.75 faces +x.

#include <lf4d/errors.hpp>
#include <lf4d/vec.hpp>

#include <cmath>
#include <optional>
#include <sstream>

namespace lf4d {

// Relative tolerance for "point lies on the proxy sphere".
inline constexpr double kOnSurfaceTolerance = 1e-6;
// Below this |up x N| the frame falls back to the +x reference axis.
inline constexpr double kPoleFrameEpsilon = 1e-6;
// Below this projection length the azimuthal angle is undefined.
inline constexpr double kDegenerateProjection = 1e-9;
// Directions with d.e_z below -kHemisphereSlack are internal.
inline constexpr double kHemisphereSlack = 1e-6;
inline constexpr double kRayEpsilon = 1e-6;

struct ProxyModel {
    Vec3 center;
    double radius = 1;

    ProxyModel() = default;
    ProxyModel(const Vec3 &center, double radius) : center(center), radius(radius) {
        if (!(radius > 0) || !std::isfinite(radius))
            throw DomainError("proxy model radius must be positive");
    }

    bool Contains(const Vec3 &p) const { return Distance(p, center) < radius; }
};

// Position on the proxy surface, both coordinates in [0, 1].
// u: azimuth, theta = 360 u - 180 degrees. v: elevation, phi = 180 v - 90 degrees.
struct SurfaceCoord {
    double u = 0.5, v = 0.5;
};

// Outgoing direction in a local frame, both coordinates in [0, 1].
// s: alpha = 180 s - 90 degrees (about e_y). t: beta = 180 t - 90 degrees (toward e_y).
struct AngularCoord {
    double s = 0.5, t = 0.5;
};

struct SurfaceFrame {
    Vec3 ex, ey, ez;

    Vec3 ToWorld(const Vec3 &local) const { return ex * local.x + ey * local.y + ez * local.z; }
};

inline SurfaceCoord SphereParam(const Vec3 &p, const ProxyModel &model) {
    Vec3 q = p - model.center;
    double r = Length(q);
    if (!(std::abs(r - model.radius) <= kOnSurfaceTolerance * model.radius)) {
        std::ostringstream ss;
        ss << "point " << p << " is not on the proxy sphere (|P - C| = " << r
           << ", radius = " << model.radius << ")";
        throw DomainError(ss.str());
    }
    double v = (std::asin(Clamp(q.y / r, -1.0, 1.0)) + kPi / 2) / kPi;
    double u = 0.5;
    // atan2(0, 0) is undefined at the poles; the point is the same for every u.
    if (std::hypot(q.x, q.z) > 1e-12 * r)
        u = (std::atan2(q.x, q.z) + kPi) / (2 * kPi);
    return {Clamp(u, 0.0, 1.0), Clamp(v, 0.0, 1.0)};
}

inline Vec3 SpherePoint(const SurfaceCoord &c, const ProxyModel &model) {
    double theta = 2 * kPi * c.u - kPi;
    double phi = kPi * c.v - kPi / 2;
    if (c.v <= 0.0 || c.v >= 1.0)
        return model.center + Vec3(0, c.v <= 0.0 ? -model.radius : model.radius, 0);
    double cp = std::cos(phi);
    return model.center +
           Vec3(cp * std::sin(theta), std::sin(phi), cp * std::cos(theta)) * model.radius;
}

inline SurfaceFrame LocalFrame(const Vec3 &n) {
    SurfaceFrame f;
    f.ez = n;
    Vec3 side = Cross(kWorldUp, n);
    double len = Length(side);
    if (len < kPoleFrameEpsilon) {
        Vec3 ref(1, 0, 0);
        f.ex = Normalize(ref - n * Dot(ref, n));
    } else {
        f.ex = side / len;
    }
    f.ey = Cross(f.ez, f.ex);
    return f;
}

namespace detail {

inline AngularCoord AngularFromUnit(const SurfaceFrame &frame, const Vec3 &d) {
    double dy = Dot(frame.ey, d);
    Vec3 proj = d - frame.ey * dy;
    double plen = Length(proj);
    double alpha = 0;
    if (plen >= kDegenerateProjection)
        alpha = std::asin(Clamp(Dot(frame.ex, proj) / plen, -1.0, 1.0));
    double beta = std::asin(Clamp(dy, -1.0, 1.0));
    return {Clamp((alpha + kPi / 2) / kPi, 0.0, 1.0), Clamp((beta + kPi / 2) / kPi, 0.0, 1.0)};
}

}  // namespace detail

// d must be a unit vector in the external hemisphere of the frame.
inline AngularCoord AngularParam(const SurfaceFrame &frame, const Vec3 &d) {
    if (Dot(d, frame.ez) < -kHemisphereSlack) {
        std::ostringstream ss;
        ss << "direction " << d << " lies in the internal hemisphere (d.e_z = " << Dot(d, frame.ez)
           << ")";
        throw DomainError(ss.str());
    }
    return detail::AngularFromUnit(frame, d);
}

// Same as AngularParam, but a direction in the internal hemisphere is first
// pulled onto the hemisphere boundary (its tangent-plane projection).
inline AngularCoord AngularParamClamped(const SurfaceFrame &frame, const Vec3 &d) {
    double dz = Dot(d, frame.ez);
    if (dz >= 0) return detail::AngularFromUnit(frame, d);
    Vec3 tangent = d - frame.ez * dz;
    double len = Length(tangent);
    if (len < kDegenerateProjection) return {0.5, 0.5};
    return detail::AngularFromUnit(frame, tangent / len);
}

inline Vec3 AngularDir(const SurfaceFrame &frame, const AngularCoord &a) {
    double alpha = kPi * a.s - kPi / 2;
    double beta = kPi * a.t - kPi / 2;
    double cb = std::cos(beta);
    // cos(alpha) >= 0 on the closed range, so d.e_z >= 0; max() absorbs -0 noise.
    return frame.ToWorld({cb * std::sin(alpha), std::sin(beta), std::max(0.0, cb * std::cos(alpha))});
}

struct SurfaceHit {
    Vec3 point;
    Vec3 normal;  // outward, unit
    double t = 0;
};

// Nearest intersection with t >= kRayEpsilon. A ray whose discriminant is
// within 1e-12 (relative to r^2) below zero grazes the limb and counts as a hit.
inline std::optional<SurfaceHit> RaySphereHit(const Ray &ray, const ProxyModel &model) {
    Vec3 oc = ray.origin - model.center;
    double b = Dot(oc, ray.direction);
    double r2 = model.radius * model.radius;
    double c = LengthSquared(oc) - r2;
    double disc = b * b - c;
    if (disc < 0) {
        if (disc < -1e-12 * std::max(1.0, r2)) return std::nullopt;
        disc = 0;
    }
    double root = std::sqrt(disc);
    double t = -b - root;
    if (t < kRayEpsilon) t = -b + root;
    if (t < kRayEpsilon) return std::nullopt;
    Vec3 n = Normalize(ray.At(t) - model.center);
    return SurfaceHit{model.center + n * model.radius, n, t};
}

}  // namespace lf4d
