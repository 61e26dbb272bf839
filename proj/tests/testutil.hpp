#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <string>
#include <vector>

#include "harmon/augment.hpp"
#include "harmon/image.hpp"
#include "harmon/lut.hpp"
#include "harmon/rng.hpp"

namespace testutil {

// Smooth structured test image: bilinearly upsampled coarse noise plus a few
// soft color blobs, so different crops share appearance but differ in content.
inline harmon::Image synth_image(uint64_t seed, int w, int h) {
    harmon::Rng rng(seed);
    const int gw = 5, gh = 5;
    std::vector<float> grid(gw * gh * 3);
    for (auto& v : grid) v = static_cast<float>(rng.next_in(0.1, 0.9));

    harmon::Image img(w, h);
    for (int y = 0; y < h; ++y) {
        const double gy = static_cast<double>(y) / (h - 1) * (gh - 1);
        const int y0 = std::min(static_cast<int>(gy), gh - 2);
        const double fy = gy - y0;
        for (int x = 0; x < w; ++x) {
            const double gx = static_cast<double>(x) / (w - 1) * (gw - 1);
            const int x0 = std::min(static_cast<int>(gx), gw - 2);
            const double fx = gx - x0;
            for (int c = 0; c < 3; ++c) {
                const double a = grid[(y0 * gw + x0) * 3 + c];
                const double b = grid[(y0 * gw + x0 + 1) * 3 + c];
                const double d = grid[((y0 + 1) * gw + x0) * 3 + c];
                const double e = grid[((y0 + 1) * gw + x0 + 1) * 3 + c];
                img.at(x, y, c) =
                    static_cast<float>((1 - fy) * ((1 - fx) * a + fx * b) + fy * ((1 - fx) * d + fx * e));
            }
        }
    }

    const int blobs = 3 + static_cast<int>(rng.next_int(0, 2));
    for (int k = 0; k < blobs; ++k) {
        const double cx = rng.next_in(0.1, 0.9) * w;
        const double cy = rng.next_in(0.1, 0.9) * h;
        const double rad = rng.next_in(0.08, 0.25) * std::min(w, h);
        float color[3];
        for (auto& c : color) c = static_cast<float>(rng.next_in(0.05, 0.95));
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double d2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (rad * rad);
                if (d2 > 1.0) continue;
                const float t = static_cast<float>(1.0 - std::sqrt(d2));
                for (int c = 0; c < 3; ++c)
                    img.at(x, y, c) = std::clamp(img.at(x, y, c) * (1 - t) + color[c] * t, 0.0f, 1.0f);
            }
    }
    return img;
}

inline harmon::Image random_image(uint64_t seed, int w, int h) {
    harmon::Rng rng(seed);
    harmon::Image img(w, h);
    for (auto& v : img.data) v = static_cast<float>(rng.next_double());
    return img;
}

// Spatially heterogeneous test image: 3-5 soft voronoi regions with palettes
// from opposite corners of the color cube, plus fine texture. Mimics photos
// whose regions genuinely differ in appearance (sky vs ground).
inline harmon::Image synth_image_regions(uint64_t seed, int w, int h) {
    harmon::Rng rng(seed);
    const int k = 3 + static_cast<int>(rng.next_int(0, 2));
    struct Site {
        double x, y;
        float color[3];
    };
    std::vector<Site> sites(k);
    for (auto& s : sites) {
        s.x = rng.next_in(0.05, 0.95) * w;
        s.y = rng.next_in(0.05, 0.95) * h;
        for (auto& c : s.color)
            c = static_cast<float>(rng.next_int(0, 1) ? rng.next_in(0.62, 0.92) : rng.next_in(0.08, 0.38));
    }
    const double temp = rng.next_in(0.01, 0.03) * std::min(w, h);
    harmon::Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double wsum = 0, acc[3] = {0, 0, 0};
            double dmin = 1e18;
            for (const auto& s : sites) dmin = std::min(dmin, std::hypot(x - s.x, y - s.y));
            for (const auto& s : sites) {
                const double wgt = std::exp(-(std::hypot(x - s.x, y - s.y) - dmin) / temp);
                wsum += wgt;
                for (int c = 0; c < 3; ++c) acc[c] += wgt * s.color[c];
            }
            for (int c = 0; c < 3; ++c) img.at(x, y, c) = static_cast<float>(acc[c] / wsum);
        }
    harmon::Rng tex(harmon::mix_seed(seed, 0x7E));
    for (auto& v : img.data)
        v = std::clamp(v + static_cast<float>(tex.next_in(-0.04, 0.04)), 0.0f, 1.0f);
    return img;
}

inline std::vector<harmon::augment::CorpusImage> synth_corpus(uint64_t seed, int n, int w, int h) {
    std::vector<harmon::augment::CorpusImage> corpus;
    for (int i = 0; i < n; ++i)
        corpus.push_back({"img" + std::to_string(i), synth_image(harmon::mix_seed(seed, i), w, h)});
    return corpus;
}

inline std::vector<harmon::augment::CorpusImage> synth_corpus_regions(uint64_t seed, int n, int w, int h) {
    std::vector<harmon::augment::CorpusImage> corpus;
    for (int i = 0; i < n; ++i)
        corpus.push_back({"img" + std::to_string(i), synth_image_regions(harmon::mix_seed(seed, i), w, h)});
    return corpus;
}

inline std::vector<harmon::augment::BankLut> synth_bank(uint64_t seed, int n, double strength) {
    std::vector<harmon::augment::BankLut> bank;
    for (int i = 0; i < n; ++i)
        bank.push_back({"lut" + std::to_string(i),
                        harmon::lut::random_smooth_lut(harmon::mix_seed(seed, i), strength)});
    return bank;
}

// Small unrelated random images; enough for loss/gradient machinery.
inline harmon::augment::TripletSample random_triplet(uint64_t seed, int size) {
    harmon::augment::TripletSample t;
    t.content_a = random_image(harmon::mix_seed(seed, 1), size, size);
    t.content_b = random_image(harmon::mix_seed(seed, 2), size, size);
    t.ref_a = random_image(harmon::mix_seed(seed, 3), size, size);
    t.ref_b = random_image(harmon::mix_seed(seed, 4), size, size);
    return t;
}

inline double max_abs_diff(const harmon::Image& a, const harmon::Image& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(static_cast<double>(a.data[i]) - b.data[i]));
    return m;
}

inline bool images_equal(const harmon::Image& a, const harmon::Image& b) {
    return a.width == b.width && a.height == b.height && a.data == b.data;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("harmon_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
