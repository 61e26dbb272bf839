#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "harmon/augment.hpp"
#include "harmon/harmonizer.hpp"
#include "harmon/image.hpp"
#include "harmon/metrics.hpp"

namespace harmon::pipeline {

// Reference crop around the placement: the rect scaled about its center by
// `expand`, clamped to image bounds, minimum side 32.
Image locality_crop(const Image& bg, const Rect& placement, double expand = 2.0);

struct HarmonizeOptions {
    bool locality = true;
    double expand = 2.0;
};

// R = locality crop (or the whole background), C' = harmonize(fg, R),
// output = composite(C', bg, mask, placement). The reference never sees the
// composite, so a large foreground cannot occlude the background evidence.
Image harmonize_composite(const model::HarmonizerModel& m, const Image& fg, const Image& bg,
                          const Mask& mask, const Rect& placement, const HarmonizeOptions& opts = {});

// Degree-2 polynomial color map, basis per pixel
// [1, r, g, b, r^2, g^2, b^2, rg, rb, gb] -> 3 outputs.
struct PolyColorMap {
    static constexpr int kTerms = 10;
    std::array<std::array<double, 3>, kTerms> coef{};  // coef[term][channel]
};

// Least-squares fit via normal equations with Tikhonov damping 1e-6.
// Requires equal lowres dimensions and at least 1000 pixels.
PolyColorMap fit_color_map(const Image& lowres_in, const Image& lowres_out);
Image apply_color_map(const PolyColorMap& map, const Image& img);

// Full-resolution variant: harmonize a downscaled foreground, fit the color
// map on the low-res pair, then apply it at native resolution.
Image harmonize_composite_highres(const model::HarmonizerModel& m, const Image& fg, const Image& bg,
                                  const Mask& mask, const Rect& placement,
                                  const HarmonizeOptions& opts = {}, int lowres_long_side = 256);

enum class MaskStyle { rect, ellipse };
const char* to_string(MaskStyle s);
MaskStyle mask_style_from_string(const std::string& s);

// Held-out-LUT benchmark case: ground truth is the pristine image, the
// foreground is the held-out LUT applied to the placement crop, and the
// background is the un-perturbed scene.
struct BenchmarkCase {
    int index = 0;
    std::string image_id;
    std::string heldout_lut_id;
    Image background;
    Image foreground;
    Mask mask;
    Rect placement;
    Image ground_truth;
};

std::vector<BenchmarkCase> synth_benchmark(const std::vector<augment::CorpusImage>& images,
                                           const std::vector<augment::BankLut>& heldout_luts,
                                           int count, uint64_t seed,
                                           MaskStyle style = MaskStyle::rect);

// manifest.json + per-case PNGs (NNNNNN_{bg,fg,mask,gt}.png), hashes included.
std::string write_benchmark(const std::vector<BenchmarkCase>& cases,
                            const std::filesystem::path& out_dir, uint64_t seed, MaskStyle style);
std::vector<BenchmarkCase> read_benchmark(const std::filesystem::path& dir);

struct CaseResult {
    int index = 0;
    metrics::PairReport reports;
};

struct BenchmarkSummary {
    std::vector<CaseResult> cases;
    metrics::Report method_mean, method_median;
    metrics::Report baseline_mean, baseline_median;
    int wins_mse = 0;  // cases where the method beats the direct composite
    int total = 0;
};

// Harmonize every case, score against the direct-composite baseline at
// 256x256, aggregate mean/median in case-index order.
BenchmarkSummary run_benchmark(const model::HarmonizerModel& m, const std::vector<BenchmarkCase>& cases,
                               const HarmonizeOptions& opts = {}, int workers = 1);

std::string summary_json(const BenchmarkSummary& s);
std::string summary_csv(const BenchmarkSummary& s);

}  // namespace harmon::pipeline
