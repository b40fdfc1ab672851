// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

namespace lf4d {

inline constexpr double kPi = std::numbers::pi;

constexpr double Radians(double deg) { return deg * (kPi / 180.0); }
constexpr double Degrees(double rad) { return rad * (180.0 / kPi); }

template <typename T>
constexpr T Clamp(T v, T lo, T hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

struct Vec3 {
    double x = 0, y = 0, z = 0;

    constexpr Vec3() = default;
    constexpr Vec3(double x, double y, double z) : x(x), y(y), z(z) {}

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 &operator+=(const Vec3 &o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3 &operator-=(const Vec3 &o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3 &operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    constexpr bool operator==(const Vec3 &) const = default;
};

constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

constexpr double Dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 Cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr double LengthSquared(const Vec3 &v) { return Dot(v, v); }
inline double Length(const Vec3 &v) { return std::sqrt(Dot(v, v)); }
inline double Distance(const Vec3 &a, const Vec3 &b) { return Length(a - b); }
inline Vec3 Normalize(const Vec3 &v) { return v / Length(v); }

inline bool IsFinite(const Vec3 &v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

inline std::ostream &operator<<(std::ostream &os, const Vec3 &v) {
    return os << "[ " << v.x << ", " << v.y << ", " << v.z << " ]";
}

inline constexpr Vec3 kWorldUp{0, 1, 0};

// Row-major 3x3 matrix, used for rigid rotations.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    constexpr Vec3 operator*(const Vec3 &v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
    constexpr Mat3 operator*(const Mat3 &o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
        return r;
    }
    constexpr Mat3 Transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    static Mat3 RotateX(double deg) {
        double s = std::sin(Radians(deg)), c = std::cos(Radians(deg));
        return {{{{1, 0, 0}, {0, c, -s}, {0, s, c}}}};
    }
    static Mat3 RotateY(double deg) {
        double s = std::sin(Radians(deg)), c = std::cos(Radians(deg));
        return {{{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}}};
    }
    static Mat3 RotateZ(double deg) {
        double s = std::sin(Radians(deg)), c = std::cos(Radians(deg));
        return {{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}}};
    }
    // Extrinsic X, then Y, then Z about the fixed world axes.
    static Mat3 EulerXYZ(const Vec3 &deg) { return RotateZ(deg.z) * RotateY(deg.y) * RotateX(deg.x); }
};

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length

    constexpr Vec3 At(double t) const { return origin + direction * t; }
};

}  // namespace lf4d
