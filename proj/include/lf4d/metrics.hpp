// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <lf4d/errors.hpp>
#include <lf4d/image.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace lf4d {

struct Rect {
    int x = 0, y = 0, width = 0, height = 0;

    bool operator==(const Rect &) const = default;
    bool Within(const Image &img) const {
        return x >= 0 && y >= 0 && width > 0 && height > 0 && x + width <= img.Width() &&
               y + height <= img.Height();
    }
};

// Mean squared error over all channels of the 8-bit (clamped, no gamma)
// quantization of both images.
inline double Mse(const Image &a, const Image &b) {
    if (a.Width() != b.Width() || a.Height() != b.Height())
        throw std::invalid_argument("image dimensions differ: " + std::to_string(a.Width()) + "x" +
                                    std::to_string(a.Height()) + " vs " + std::to_string(b.Width()) +
                                    "x" + std::to_string(b.Height()));
    double sum = 0;
    for (std::size_t i = 0; i < a.PixelCount(); ++i)
        for (int ch = 0; ch < 3; ++ch) {
            double d = double(ToByte(a.Pixels()[i][ch])) - double(ToByte(b.Pixels()[i][ch]));
            sum += d * d;
        }
    return sum / (3.0 * a.PixelCount());
}

inline double PsnrFromMse(double mse) {
    if (mse == 0) return std::numeric_limits<double>::infinity();
    return 10 * std::log10(255.0 * 255.0 / mse);
}

// +infinity for identical images.
inline double Psnr(const Image &a, const Image &b) { return PsnrFromMse(Mse(a, b)); }

inline double Luminance(const Color &c) { return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b; }

// Mean magnitude of the central-difference luminance gradient over `region`
// (whole image by default). Neighbours are clamped at the image border.
inline double GradientEnergy(const Image &img, std::optional<Rect> region = std::nullopt) {
    Rect r = region.value_or(Rect{0, 0, img.Width(), img.Height()});
    if (!r.Within(img)) throw std::invalid_argument("gradient region outside the image");
    auto lum = [&](int x, int y) {
        x = std::clamp(x, 0, img.Width() - 1);
        y = std::clamp(y, 0, img.Height() - 1);
        return Luminance(img(x, y));
    };
    double sum = 0;
    for (int y = r.y; y < r.y + r.height; ++y)
        for (int x = r.x; x < r.x + r.width; ++x) {
            double gx = (lum(x + 1, y) - lum(x - 1, y)) / 2;
            double gy = (lum(x, y + 1) - lum(x, y - 1)) / 2;
            sum += std::sqrt(gx * gx + gy * gy);
        }
    return sum / (double(r.width) * r.height);
}

struct MetricReport {
    double psnr = 0;
    double mse = 0;
    double gradient_a = 0;
    double gradient_b = 0;
    std::optional<Rect> region;

    std::string ToKeyValue() const {
        std::ostringstream ss;
        ss << std::setprecision(6) << "psnr=" << (std::isinf(psnr) ? std::string("inf") : Fmt(psnr))
           << " mse=" << mse << " grad_a=" << gradient_a << " grad_b=" << gradient_b;
        if (region)
            ss << " region=" << region->x << "," << region->y << "," << region->width << ","
               << region->height;
        return ss.str();
    }

    nlohmann::json ToJson() const {
        nlohmann::json j;
        j["psnr"] = std::isinf(psnr) ? nlohmann::json("inf") : nlohmann::json(psnr);
        j["mse"] = mse;
        j["gradient_a"] = gradient_a;
        j["gradient_b"] = gradient_b;
        if (region) j["region"] = {region->x, region->y, region->width, region->height};
        return j;
    }

  private:
    static std::string Fmt(double v) {
        std::ostringstream ss;
        ss << std::setprecision(6) << v;
        return ss.str();
    }
};

inline Image Crop(const Image &img, const Rect &r) {
    if (!r.Within(img)) throw std::invalid_argument("crop region outside the image");
    Image out(r.width, r.height);
    for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x) out(x, y) = img(r.x + x, r.y + y);
    return out;
}

inline MetricReport Compare(const Image &a, const Image &b, std::optional<Rect> region = std::nullopt) {
    if (a.Width() != b.Width() || a.Height() != b.Height())
        throw std::invalid_argument("image dimensions differ");
    MetricReport rep;
    rep.region = region;
    if (region) {
        rep.mse = Mse(Crop(a, *region), Crop(b, *region));
    } else {
        rep.mse = Mse(a, b);
    }
    rep.psnr = PsnrFromMse(rep.mse);
    rep.gradient_a = GradientEnergy(a, region);
    rep.gradient_b = GradientEnergy(b, region);
    return rep;
}

}  // namespace lf4d
