#pragma once

#include "harmon/image.hpp"

namespace harmon::metrics {

// Mean over all pixels/channels of (255*(a-b))^2, 64-bit accumulation.
double mse(const Image& a, const Image& b);

// 10*log10(255^2 / mse); +infinity when mse is zero.
double psnr(const Image& a, const Image& b);

// Single-scale SSIM on Rec.601 luminance: 11x11 Gaussian window sigma=1.5,
// C1=(0.01)^2, C2=(0.03)^2 at dynamic range 1.0, valid-window convolution,
// mean over the SSIM map. Requires min side >= 11.
double ssim(const Image& a, const Image& b);

struct Report {
    double mse = 0;
    double psnr = 0;
    double ssim = 0;
};

Report evaluate(const Image& output, const Image& ground_truth);

struct PairReport {
    Report method;
    Report baseline;
};

// Scores (output, gt) next to (baseline, gt). Caller resizes to the
// evaluation resolution first.
PairReport evaluate_pair(const Image& output, const Image& ground_truth, const Image& baseline);

}  // namespace harmon::metrics
