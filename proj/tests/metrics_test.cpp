// Copyright 2026 The lf4d Authors.
// The lf4d source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include <gtest/gtest.h>

#include <lf4d/metrics.hpp>

#include <random>
#include <sstream>

using namespace lf4d;

namespace {

Image Gray(int w, int h, int level) {
    double v = level / 255.0;
    return Image(w, h, {v, v, v});
}

Image Noise(int w, int h, std::uint64_t seed) {
    Image img(w, h);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0, 1);
    for (Color &c : img.Pixels()) c = {u01(rng), u01(rng), u01(rng)};
    return img;
}

Image BoxBlur(const Image &img) {
    Image out(img.Width(), img.Height());
    for (int y = 0; y < img.Height(); ++y)
        for (int x = 0; x < img.Width(); ++x) {
            Color sum;
            int n = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    int xx = x + dx, yy = y + dy;
                    if (xx < 0 || yy < 0 || xx >= img.Width() || yy >= img.Height()) continue;
                    sum += img(xx, yy);
                    ++n;
                }
            out(x, y) = sum / n;
        }
    return out;
}

}  // namespace

TEST(Psnr, IdenticalImagesAreInfinite) {
    Image a = Noise(16, 9, 1);
    EXPECT_TRUE(std::isinf(Psnr(a, a)));
    EXPECT_GT(Psnr(a, a), 0);
    Image b = a;
    b(3, 4).g = b(3, 4).g > 0.5 ? 0 : 1;
    EXPECT_TRUE(std::isfinite(Psnr(a, b)));
}

TEST(Psnr, BlackVersusWhiteIsZero) {
    EXPECT_DOUBLE_EQ(255.0 * 255.0, Mse(Gray(7, 5, 0), Gray(7, 5, 255)));
    EXPECT_DOUBLE_EQ(0.0, Psnr(Gray(7, 5, 0), Gray(7, 5, 255)));
}

TEST(Psnr, CheckerboardAgainstItsBlur) {
    // 4x4 checkerboard of levels 100/150; its 2x2 box blur is 125 everywhere
    // (periodic), so every channel of every pixel is off by 25.
    Image board(4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
            double v = ((x + y) % 2 ? 150 : 100) / 255.0;
            board(x, y) = {v, v, v};
        }
    Image blur = Gray(4, 4, 125);
    EXPECT_DOUBLE_EQ(625.0, Mse(board, blur));
    EXPECT_NEAR(10 * std::log10(65025.0 / 625.0), Psnr(board, blur), 1e-12);
    EXPECT_NEAR(20.1720, Psnr(board, blur), 1e-4);
}

TEST(Psnr, SymmetricAndSizeChecked) {
    Image a = Noise(20, 10, 2), b = Noise(20, 10, 3);
    EXPECT_EQ(Psnr(a, b), Psnr(b, a));
    EXPECT_THROW(Psnr(a, Noise(10, 20, 4)), std::invalid_argument);
}

TEST(Psnr, ComputedOnEightBitLevels) {
    // sub-level differences vanish after quantization
    Image a = Gray(4, 4, 100);
    Image b = a;
    for (Color &c : b.Pixels()) c = c + Color(0.1 / 255, 0.1 / 255, 0.1 / 255);
    EXPECT_TRUE(std::isinf(Psnr(a, b)));
}

TEST(GradientEnergy, ConstantImageIsZero) {
    EXPECT_EQ(0.0, GradientEnergy(Gray(9, 7, 77)));
    EXPECT_EQ(0.0, GradientEnergy(Gray(9, 7, 0), Rect{2, 2, 3, 3}));
}

TEST(GradientEnergy, StepEdgeIsLinearInHeight) {
    auto step = [](double h) {
        Image img(10, 6);
        for (int y = 0; y < 6; ++y)
            for (int x = 5; x < 10; ++x) img(x, y) = {h, h, h};
        return img;
    };
    double e1 = GradientEnergy(step(0.2));
    double e2 = GradientEnergy(step(0.4));
    EXPECT_GT(e1, 0);
    EXPECT_NEAR(2 * e1, e2, 1e-12);
    // two columns straddle the edge, each with |g| = h / 2
    EXPECT_NEAR(2 * 6 * 0.1 / 60, e1, 1e-12);
}

TEST(GradientEnergy, BlurLowersEnergy) {
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
        Image n = Noise(32, 24, seed);
        EXPECT_LT(GradientEnergy(BoxBlur(n)), GradientEnergy(n));
    }
}

TEST(GradientEnergy, InvariantUnderConstantOffset) {
    Image a = Noise(16, 16, 20);
    for (Color &c : a.Pixels()) c = c * 0.5;
    Image b = a;
    for (Color &c : b.Pixels()) c = c + Color(0.25, 0.25, 0.25);
    EXPECT_NEAR(GradientEnergy(a), GradientEnergy(b), 1e-12);
    EXPECT_NEAR(GradientEnergy(a, Rect{3, 4, 5, 6}), GradientEnergy(b, Rect{3, 4, 5, 6}), 1e-12);
}

TEST(GradientEnergy, RegionMustBeInside) {
    Image a = Noise(8, 8, 21);
    EXPECT_THROW(GradientEnergy(a, Rect{4, 4, 5, 1}), std::invalid_argument);
    EXPECT_THROW(GradientEnergy(a, Rect{0, 0, 0, 3}), std::invalid_argument);
}

TEST(Compare, ReportFormats) {
    Image a = Noise(8, 8, 30);
    MetricReport same = Compare(a, a);
    EXPECT_EQ(0.0, same.mse);
    EXPECT_EQ(0u, same.ToKeyValue().find("psnr=inf mse=0"));
    EXPECT_EQ("inf", same.ToJson()["psnr"]);

    MetricReport r = Compare(Gray(8, 8, 0), Gray(8, 8, 255), Rect{1, 2, 3, 4});
    EXPECT_DOUBLE_EQ(0.0, r.psnr);
    EXPECT_NE(std::string::npos, r.ToKeyValue().find("region=1,2,3,4"));
    EXPECT_EQ(0.0, r.ToJson()["psnr"].get<double>());
    EXPECT_EQ(4, r.ToJson()["region"][3].get<int>());
}

TEST(Compare, RegionRestrictsMse) {
    Image a = Gray(10, 10, 0), b = Gray(10, 10, 0);
    for (int y = 0; y < 10; ++y) b(9, y) = {1, 1, 1};
    EXPECT_TRUE(std::isinf(Compare(a, b, Rect{0, 0, 8, 10}).psnr));
    EXPECT_TRUE(std::isfinite(Compare(a, b).psnr));
}

TEST(Ppm, RoundTripAndHeader) {
    Image a = Noise(5, 3, 40);
    std::stringstream ss;
    WritePpm(ss, a);
    std::string bytes = ss.str();
    EXPECT_EQ(0u, bytes.find("P6\n5 3\n255\n"));
    EXPECT_EQ(11u + 45u, bytes.size());
    Image b = ReadPpm(ss);
    EXPECT_EQ(ToBytes(a), ToBytes(b));

    std::istringstream bad("P3\n1 1\n255\n0 0 0\n");
    EXPECT_THROW(ReadPpm(bad), FormatError);
    std::istringstream deep("P6\n1 1\n65535\n\0\0\0\0\0\0");
    EXPECT_THROW(ReadPpm(deep), FormatError);
    std::istringstream comment("P6\n# made by hand\n1 1\n255\nabc");
    Image c = ReadPpm(comment);
    EXPECT_EQ(ToByte(c(0, 0).r), 'a');
}

TEST(Ppm, GammaFlagChangesEncoding) {
    EXPECT_EQ(128, ToByte(0.5));
    EXPECT_EQ(186, ToByte(0.5, true));
    EXPECT_EQ(0, ToByte(-1));
    EXPECT_EQ(255, ToByte(2, true));
}
