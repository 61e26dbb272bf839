#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "harmon/metrics.hpp"
#include "harmon/rng.hpp"
#include "testutil.hpp"

using namespace harmon;

namespace {

// direct per-window double loop with the same Gaussian and constants
double oracle_ssim(const Image& a, const Image& b) {
    const int w = a.width, h = a.height;
    std::vector<double> x(static_cast<std::size_t>(w) * h), y(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) {
        x[p] = 0.299 * a.data[p * 3] + 0.587 * a.data[p * 3 + 1] + 0.114 * a.data[p * 3 + 2];
        y[p] = 0.299 * b.data[p * 3] + 0.587 * b.data[p * 3 + 1] + 0.114 * b.data[p * 3 + 2];
    }
    double kernel[11][11];
    double ksum = 0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            const double di = i - 5, dj = j - 5;
            kernel[i][j] = std::exp(-(di * di + dj * dj) / (2.0 * 1.5 * 1.5));
            ksum += kernel[i][j];
        }
    for (auto& row : kernel)
        for (auto& v : row) v /= ksum;

    const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
    double acc = 0;
    int count = 0;
    for (int oy = 0; oy + 11 <= h; ++oy)
        for (int ox = 0; ox + 11 <= w; ++ox) {
            double mx = 0, my = 0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    mx += kernel[i][j] * x[(oy + i) * w + ox + j];
                    my += kernel[i][j] * y[(oy + i) * w + ox + j];
                }
            double vx = 0, vy = 0, cxy = 0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    const double dx = x[(oy + i) * w + ox + j] - mx;
                    const double dy = y[(oy + i) * w + ox + j] - my;
                    vx += kernel[i][j] * dx * dx;
                    vy += kernel[i][j] * dy * dy;
                    cxy += kernel[i][j] * dx * dy;
                }
            acc += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++count;
        }
    return acc / count;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("mse basics") {
    const Image a = testutil::random_image(1, 20, 15);
    CHECK(metrics::mse(a, a) == 0.0);

    Image zeros(8, 8, 0.0f), ones(8, 8, 1.0f);
    CHECK(metrics::mse(zeros, ones) == doctest::Approx(65025.0));

    Image base(8, 8, 0.5f), shifted(8, 8, 0.5f + 10.0f / 255.0f);
    CHECK(metrics::mse(base, shifted) == doctest::Approx(100.0).epsilon(1e-5));
}

TEST_CASE("mse symmetry and translation sensitivity") {
    const Image a = testutil::random_image(2, 17, 9);
    const Image b = testutil::random_image(3, 17, 9);
    CHECK(metrics::mse(a, b) == doctest::Approx(metrics::mse(b, a)).epsilon(1e-12));

    Image a2 = a, b2 = b;
    for (auto& v : a2.data) v += 0.125f;
    for (auto& v : b2.data) v += 0.125f;
    CHECK(metrics::mse(a2, b2) == doctest::Approx(metrics::mse(a, b)).epsilon(1e-5));

    Image wrong(16, 9, 0.0f);
    CHECK_THROWS_AS(metrics::mse(a, wrong), std::invalid_argument);
}

TEST_CASE("psnr closed forms") {
    const Image a = testutil::random_image(4, 20, 20);
    CHECK(std::isinf(metrics::psnr(a, a)));

    Image zeros(8, 8, 0.0f), ones(8, 8, 1.0f);
    CHECK(metrics::psnr(zeros, ones) == doctest::Approx(0.0).epsilon(1e-9));

    Image base(8, 8, 0.5f), shifted(8, 8, 0.5f + 10.0f / 255.0f);
    CHECK(metrics::psnr(base, shifted) == doctest::Approx(28.1308).epsilon(1e-4));
}

TEST_CASE("psnr strictly decreases in mse") {
    Image base(12, 12, 0.25f);
    double last_psnr = std::numeric_limits<double>::infinity();
    for (float delta : {0.01f, 0.05f, 0.1f, 0.3f}) {
        Image other(12, 12, 0.25f + delta);
        const double p = metrics::psnr(base, other);
        CHECK(p < last_psnr);
        last_psnr = p;
    }
}

TEST_CASE("ssim of an image with itself is 1") {
    const Image a = testutil::synth_image(5, 32, 24);
    CHECK(metrics::ssim(a, a) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ssim constant-image closed form") {
    Image a(16, 16, 0.2f), b(16, 16, 0.8f);
    CHECK(metrics::ssim(a, b) == doctest::Approx(0.47067).epsilon(1e-4 / 0.47067));
}

TEST_CASE("ssim rejects tiny images") {
    Image small(10, 10, 0.5f);
    CHECK_THROWS_AS(metrics::ssim(small, small), std::invalid_argument);
}

TEST_CASE("ssim matches the brute-force oracle") {
    for (int k = 0; k < 10; ++k) {
        const Image a = testutil::random_image(100 + k, 24, 18);
        const Image b = testutil::random_image(200 + k, 24, 18);
        CHECK(std::abs(metrics::ssim(a, b) - oracle_ssim(a, b)) <= 1e-8);
    }
}

TEST_CASE("ssim symmetry and range") {
    for (int k = 0; k < 5; ++k) {
        const Image a = testutil::synth_image(300 + k, 26, 20);
        const Image b = testutil::synth_image(400 + k, 26, 20);
        const double s = metrics::ssim(a, b);
        CHECK(s >= -1.0);
        CHECK(s <= 1.0);
        CHECK(s == doctest::Approx(metrics::ssim(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate_pair") {
    const Image gt = testutil::synth_image(6, 40, 30);
    const Image baseline = testutil::synth_image(7, 40, 30);

    const auto same = metrics::evaluate_pair(gt, gt, baseline);
    CHECK(std::isinf(same.method.psnr));
    CHECK(same.method.ssim == doctest::Approx(1.0).epsilon(1e-9));

    const auto echoed = metrics::evaluate_pair(baseline, gt, baseline);
    CHECK(echoed.method.mse == echoed.baseline.mse);
    CHECK(echoed.method.psnr == echoed.baseline.psnr);
    CHECK(echoed.method.ssim == echoed.baseline.ssim);
}

}  // TEST_SUITE
