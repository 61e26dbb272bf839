#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "harmon/augment.hpp"
#include "harmon/image.hpp"

namespace harmon::model {

// Handcrafted appearance descriptor: per-channel mean (3), per-channel std
// (3), per-channel 8-bin normalized histogram over [0,1] (24). Bin k takes
// values in [k/8, (k+1)/8), last bin closed.
struct AppearanceFeatures {
    static constexpr int kDim = 30;
    std::array<double, kDim> v{};
};

AppearanceFeatures extract_features(const Image& img);

struct Linear {
    int in = 0;
    int out = 0;
    std::vector<double> w;  // out x in, row-major
    std::vector<double> b;  // out

    Linear() = default;
    Linear(int in_dim, int out_dim);
};

// Global polynomial color transform predicted by the fusion head.
// Applied pixelwise: out_c = sum_j m[c][j]*in_j + b[c] + g[c]*in_c^2.
struct ColorTransform {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    std::array<double, 3> b{0, 0, 0};
    std::array<double, 3> g{0, 0, 0};

    static ColorTransform identity() { return {}; }
    // identity offset + raw network output (m row-major 9, b 3, g 3)
    static ColorTransform from_raw(const std::array<double, 15>& raw);
    std::array<double, 3> apply(double r, double g_in, double b_in) const;
};

// Reference encoder 30 -> 32 (tanh) -> 16 and fusion (16+30) -> 32 (tanh)
// -> 15. The content encoder is the identity. The fusion output layer starts
// at zero so the initial transform is the identity.
struct HarmonizerModel {
    Linear ref1{AppearanceFeatures::kDim, 32};
    Linear ref2{32, 16};
    Linear fus1{16 + AppearanceFeatures::kDim, 32};
    Linear fus2{32, 15};

    static HarmonizerModel init(uint64_t seed);
    static HarmonizerModel zeros();

    std::size_t param_count() const;
    std::vector<double> flatten() const;
    void unflatten(const std::vector<double>& flat);
};

std::array<double, 16> ref_encode(const HarmonizerModel& m, const AppearanceFeatures& f);

ColorTransform predict_transform(const HarmonizerModel& m, const AppearanceFeatures& content_feat,
                                 const AppearanceFeatures& ref_feat);

// C' = transform(C) with coefficients predicted from (phi(C), phi(R)).
// The training path keeps values unclamped; image emission clamps to [0,1].
Image harmonize(const HarmonizerModel& m, const Image& content, const Image& reference,
                bool clamp_output = true);

struct LossWeights {
    double w1 = 0.4;
    double w2 = 0.05;
};

// All squared-error terms are means over elements. l_dis is the reference-
// encoder disentanglement term; l_dis_content is the parameter-free content
// term under the identity content encoder (reported, not part of total).
struct LossReport {
    double l_harm = 0;
    double l_recon = 0;
    double l_dis = 0;
    double l_dis_content = 0;
    double total = 0;
};

LossReport loss_total(const HarmonizerModel& m, const augment::TripletSample& t, const LossWeights& w);

// Analytic gradient of total w.r.t. every parameter, flattened in the same
// order as HarmonizerModel::flatten().
std::vector<double> grad(const HarmonizerModel& m, const augment::TripletSample& t,
                         const LossWeights& w, LossReport* report = nullptr);

// Sum of per-sample gradients, accumulated in index order.
std::vector<double> grad_batch(const HarmonizerModel& m, const std::vector<augment::TripletSample>& batch,
                               const LossWeights& w, LossReport* mean_report = nullptr);

struct TrainConfig {
    double learning_rate = 2e-4;
    int epochs_const = 70;
    int epochs_decay = 30;
    int batch_size = 64;
    int steps_per_epoch = 0;  // 0: ceil(corpus size / batch_size)
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    uint64_t seed = 0;

    void validate() const;
};

// Constant for epochs_const epochs, then linear to zero over epochs_decay.
double lr_at_epoch(const TrainConfig& cfg, int epoch);

struct EpochStats {
    int epoch = 0;
    LossReport mean;
    double lr = 0;
};

struct TrainResult {
    HarmonizerModel model;
    std::vector<EpochStats> history;
};

// Adam on batches of freshly generated triplets; sample seeds derive from
// (cfg.seed, global sample index) so runs replay exactly.
TrainResult train(const std::vector<augment::CorpusImage>& corpus,
                  const std::vector<augment::BankLut>& bank, const TrainConfig& cfg,
                  const augment::AugmentConfig& aug_cfg, const LossWeights& w = {});

std::string save_checkpoint(const HarmonizerModel& m, const TrainConfig& cfg);
HarmonizerModel load_checkpoint(const std::string& json_text, TrainConfig* cfg_out = nullptr);
std::string history_csv(const std::vector<EpochStats>& history);

}  // namespace harmon::model
