#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "harmon/image.hpp"
#include "harmon/lut.hpp"

namespace harmon::augment {

enum class CropMode { multi_crop, single_crop };
enum class AppearanceMode { lut, color_transfer, saturation };

const char* to_string(CropMode m);
const char* to_string(AppearanceMode m);
CropMode crop_mode_from_string(const std::string& s);
AppearanceMode appearance_mode_from_string(const std::string& s);

struct AugmentConfig {
    int jitter_min = 256;   // short side after resize, inclusive lower bound
    int jitter_max = 320;
    int crop_size = 224;
    double overlap_min = 0.2;  // fraction of crop area
    double overlap_max = 0.9;
    int min_offset = 8;        // pixels, at least one axis
    CropMode crop_mode = CropMode::multi_crop;
    AppearanceMode appearance = AppearanceMode::lut;

    void validate() const;  // throws std::invalid_argument
};

struct CropPair {
    Rect content;
    Rect reference;
    Image resized;
};

// Scale-jitter then draw two overlapping crop rects by rejection sampling.
// Deterministic in seed. single_crop mode returns two identical rects.
CropPair sample_crop_pair(const Image& image, uint64_t seed, const AugmentConfig& cfg);

struct TripletProvenance {
    std::string image_id;
    uint64_t seed = 0;
    Rect content_rect;
    Rect ref_rect;
    std::string lut_a;
    std::string lut_b;
};

// One self-supervised training unit: the content crop and the reference crop,
// each under appearance a and appearance b. content_b is the pseudo ground
// truth for mapping (content_a, ref_b).
struct TripletSample {
    Image content_a;
    Image content_b;
    Image ref_a;
    Image ref_b;
    TripletProvenance provenance;
};

TripletSample gen_triplet(const Image& image, const lut::Lut3d& lut_a, const lut::Lut3d& lut_b,
                          uint64_t seed, const AugmentConfig& cfg, const std::string& image_id = {},
                          const std::string& lut_a_id = {}, const std::string& lut_b_id = {});

// Per channel: (src - mean)/max(std, 1e-6) * target_std + target_mean, clamped.
Image color_transfer_meanstd(const Image& src, const std::array<double, 3>& target_mean,
                             const std::array<double, 3>& target_std);

// out = gray + factor * (src - gray), gray = Rec.601 luminance, clamped.
Image saturation_jitter(const Image& src, double factor);

struct CorpusImage {
    std::string id;
    Image image;
};

struct BankLut {
    std::string id;
    lut::Lut3d lut;
};

// Generates `count` triplets into out_dir: manifest.json plus four PNGs per
// sample (NNNNNN_{ca,cb,ra,rb}.png). Sample i depends only on
// mix_seed(master_seed, i), so any worker count produces identical bytes.
// Returns the manifest JSON text.
std::string gen_dataset(const std::vector<CorpusImage>& corpus, const std::vector<BankLut>& bank,
                        int count, uint64_t master_seed, const AugmentConfig& cfg,
                        const std::filesystem::path& out_dir, int workers = 1);

}  // namespace harmon::augment
