#include "harmon/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace harmon::metrics {

namespace {

void require_same_size(const Image& a, const Image& b, const char* what) {
    if (!a.same_size(b)) throw std::invalid_argument(std::string(what) + ": image sizes differ");
}

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

std::vector<double> gaussian_kernel() {
    std::vector<double> k(kWindow);
    const int r = kWindow / 2;
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - r;
        k[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
        sum += k[i];
    }
    for (auto& v : k) v /= sum;
    return k;
}

std::vector<double> luminance(const Image& img) {
    std::vector<double> y(img.pixel_count());
    for (std::size_t p = 0; p < y.size(); ++p)
        y[p] = 0.299 * img.data[p * 3] + 0.587 * img.data[p * 3 + 1] + 0.114 * img.data[p * 3 + 2];
    return y;
}

// separable valid-window convolution; output is (w-10) x (h-10)
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h, int& ow, int& oh) {
    const auto k = gaussian_kernel();
    ow = w - kWindow + 1;
    oh = h - kWindow + 1;
    std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kWindow; ++i) acc += k[i] * src[static_cast<std::size_t>(y) * w + x + i];
            tmp[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kWindow; ++i) acc += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    return out;
}

}  // namespace

double mse(const Image& a, const Image& b) {
    require_same_size(a, b, "mse");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = 255.0 * (static_cast<double>(a.data[i]) - b.data[i]);
        acc += d * d;
    }
    return acc / static_cast<double>(a.data.size());
}

double psnr(const Image& a, const Image& b) {
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ssim(const Image& a, const Image& b) {
    require_same_size(a, b, "ssim");
    if (a.width < kWindow || a.height < kWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    const auto x = luminance(a);
    const auto y = luminance(b);
    const std::size_t n = x.size();
    std::vector<double> xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }

    int ow = 0, oh = 0;
    const auto mu_x = filter_valid(x, a.width, a.height, ow, oh);
    const auto mu_y = filter_valid(y, a.width, a.height, ow, oh);
    const auto s_xx = filter_valid(xx, a.width, a.height, ow, oh);
    const auto s_yy = filter_valid(yy, a.width, a.height, ow, oh);
    const auto s_xy = filter_valid(xy, a.width, a.height, ow, oh);

    double acc = 0.0;
    const std::size_t m = mu_x.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double mx = mu_x[i], my = mu_y[i];
        const double vx = s_xx[i] - mx * mx;
        const double vy = s_yy[i] - my * my;
        const double cxy = s_xy[i] - mx * my;
        const double num = (2.0 * mx * my + kC1) * (2.0 * cxy + kC2);
        const double den = (mx * mx + my * my + kC1) * (vx + vy + kC2);
        acc += num / den;
    }
    return acc / static_cast<double>(m);
}

Report evaluate(const Image& output, const Image& ground_truth) {
    Report r;
    r.mse = mse(output, ground_truth);
    r.psnr = r.mse == 0.0 ? std::numeric_limits<double>::infinity()
                          : 10.0 * std::log10(255.0 * 255.0 / r.mse);
    r.ssim = ssim(output, ground_truth);
    return r;
}

PairReport evaluate_pair(const Image& output, const Image& ground_truth, const Image& baseline) {
    require_same_size(output, ground_truth, "evaluate_pair");
    require_same_size(baseline, ground_truth, "evaluate_pair");
    return {evaluate(output, ground_truth), evaluate(baseline, ground_truth)};
}

}  // namespace harmon::metrics
