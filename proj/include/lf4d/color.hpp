// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <lf4d/vec.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lf4d {

// Linear RGB radiance, nominally in [0, 1].
struct Color {
    double r = 0, g = 0, b = 0;

    constexpr Color() = default;
    constexpr Color(double r, double g, double b) : r(r), g(g), b(b) {}
    constexpr explicit Color(double v) : r(v), g(v), b(v) {}

    constexpr double operator[](int i) const { return i == 0 ? r : (i == 1 ? g : b); }
    constexpr double &operator[](int i) { return i == 0 ? r : (i == 1 ? g : b); }

    constexpr Color operator+(const Color &o) const { return {r + o.r, g + o.g, b + o.b}; }
    constexpr Color operator-(const Color &o) const { return {r - o.r, g - o.g, b - o.b}; }
    constexpr Color operator*(const Color &o) const { return {r * o.r, g * o.g, b * o.b}; }
    constexpr Color operator*(double s) const { return {r * s, g * s, b * s}; }
    constexpr Color operator/(double s) const { return {r / s, g / s, b / s}; }
    constexpr Color &operator+=(const Color &o) {
        r += o.r;
        g += o.g;
        b += o.b;
        return *this;
    }
    constexpr bool operator==(const Color &) const = default;

    Color Clamped() const {
        return {Clamp(r, 0.0, 1.0), Clamp(g, 0.0, 1.0), Clamp(b, 0.0, 1.0)};
    }
    double MaxComponent() const { return std::max({r, g, b}); }
};

constexpr Color operator*(double s, const Color &c) { return c * s; }

inline double MaxAbsDiff(const Color &a, const Color &b) {
    return std::max({std::abs(a.r - b.r), std::abs(a.g - b.g), std::abs(a.b - b.b)});
}

inline std::ostream &operator<<(std::ostream &os, const Color &c) {
    return os << "(" << c.r << ", " << c.g << ", " << c.b << ")";
}

}  // namespace lf4d
