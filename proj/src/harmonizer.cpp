#include "harmon/harmonizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "harmon/error.hpp"
#include "harmon/rng.hpp"

namespace harmon::model {

using json = nlohmann::ordered_json;

AppearanceFeatures extract_features(const Image& img) {
    const std::size_t n = img.pixel_count();
    if (n == 0) throw std::invalid_argument("extract_features: empty image");

    double mean[3] = {0, 0, 0};
    double sq[3] = {0, 0, 0};
    double hist[3][8] = {};
    for (std::size_t p = 0; p < n; ++p) {
        for (int c = 0; c < 3; ++c) {
            const double v = img.data[p * 3 + c];
            mean[c] += v;
            sq[c] += v * v;
            int bin = static_cast<int>(v * 8.0);
            bin = std::clamp(bin, 0, 7);  // closes the last bin at 1.0
            hist[c][bin] += 1.0;
        }
    }

    AppearanceFeatures f;
    for (int c = 0; c < 3; ++c) {
        const double mu = mean[c] / static_cast<double>(n);
        f.v[c] = mu;
        f.v[3 + c] = std::sqrt(std::max(0.0, sq[c] / static_cast<double>(n) - mu * mu));
        for (int k = 0; k < 8; ++k) f.v[6 + c * 8 + k] = hist[c][k] / static_cast<double>(n);
    }
    return f;
}

Linear::Linear(int in_dim, int out_dim) : in(in_dim), out(out_dim) {
    w.assign(static_cast<std::size_t>(in) * out, 0.0);
    b.assign(static_cast<std::size_t>(out), 0.0);
}

ColorTransform ColorTransform::from_raw(const std::array<double, 15>& raw) {
    ColorTransform t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.m[i][j] = (i == j ? 1.0 : 0.0) + raw[i * 3 + j];
    for (int i = 0; i < 3; ++i) t.b[i] = raw[9 + i];
    for (int i = 0; i < 3; ++i) t.g[i] = raw[12 + i];
    return t;
}

std::array<double, 3> ColorTransform::apply(double r, double g_in, double b_in) const {
    const double in[3] = {r, g_in, b_in};
    std::array<double, 3> out;
    for (int c = 0; c < 3; ++c)
        out[c] = m[c][0] * in[0] + m[c][1] * in[1] + m[c][2] * in[2] + b[c] + g[c] * in[c] * in[c];
    return out;
}

namespace {

void uniform_init(Linear& layer, Rng& rng) {
    const double bound = std::sqrt(6.0 / (layer.in + layer.out));
    for (auto& v : layer.w) v = rng.next_in(-bound, bound);
    for (auto& v : layer.b) v = 0.0;
}

void linear_forward(const Linear& layer, const double* x, double* y) {
    for (int o = 0; o < layer.out; ++o) {
        double acc = layer.b[o];
        const double* row = &layer.w[static_cast<std::size_t>(o) * layer.in];
        for (int i = 0; i < layer.in; ++i) acc += row[i] * x[i];
        y[o] = acc;
    }
}

void check_finite(const double* v, int n, const char* tensor) {
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(v[i]))
            throw std::runtime_error(std::string("harmonizer: non-finite value in ") + tensor);
}

struct EncoderTrace {
    std::array<double, 30> input;
    std::array<double, 32> hidden;  // post-tanh
    std::array<double, 16> code;
};

EncoderTrace encoder_forward(const HarmonizerModel& m, const AppearanceFeatures& f) {
    EncoderTrace tr;
    tr.input = f.v;
    double pre[32];
    linear_forward(m.ref1, tr.input.data(), pre);
    for (int i = 0; i < 32; ++i) tr.hidden[i] = std::tanh(pre[i]);
    linear_forward(m.ref2, tr.hidden.data(), tr.code.data());
    check_finite(tr.code.data(), 16, "ref_encoder code");
    return tr;
}

struct FusionTrace {
    std::array<double, 46> input;   // [code, phi(content)]
    std::array<double, 32> hidden;  // post-tanh
    std::array<double, 15> raw;
};

FusionTrace fusion_forward(const HarmonizerModel& m, const std::array<double, 16>& code,
                           const AppearanceFeatures& content_feat) {
    FusionTrace tr;
    std::copy(code.begin(), code.end(), tr.input.begin());
    std::copy(content_feat.v.begin(), content_feat.v.end(), tr.input.begin() + 16);
    double pre[32];
    linear_forward(m.fus1, tr.input.data(), pre);
    for (int i = 0; i < 32; ++i) tr.hidden[i] = std::tanh(pre[i]);
    linear_forward(m.fus2, tr.hidden.data(), tr.raw.data());
    check_finite(tr.raw.data(), 15, "fusion coefficients");
    return tr;
}

// mean over H*W*3 of (T(x) - y)^2; optionally accumulates dL/draw for a unit
// path weight (caller scales).
double transform_mse(const ColorTransform& t, const Image& x, const Image& y,
                     std::array<double, 15>* draw) {
    const std::size_t n = x.data.size();
    double acc = 0.0;
    std::array<double, 15> d{};
    for (std::size_t p = 0; p < x.pixel_count(); ++p) {
        const double in[3] = {x.data[p * 3], x.data[p * 3 + 1], x.data[p * 3 + 2]};
        for (int c = 0; c < 3; ++c) {
            const double out =
                t.m[c][0] * in[0] + t.m[c][1] * in[1] + t.m[c][2] * in[2] + t.b[c] + t.g[c] * in[c] * in[c];
            const double e = out - y.data[p * 3 + c];
            acc += e * e;
            if (draw) {
                const double dout = 2.0 * e;  // d(sum)/dout; divide by n at the end
                d[c * 3 + 0] += dout * in[0];
                d[c * 3 + 1] += dout * in[1];
                d[c * 3 + 2] += dout * in[2];
                d[9 + c] += dout;
                d[12 + c] += dout * in[c] * in[c];
            }
        }
    }
    if (draw)
        for (int i = 0; i < 15; ++i) (*draw)[i] = d[i] / static_cast<double>(n);
    return acc / static_cast<double>(n);
}

double pixel_mse(const Image& a, const Image& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double e = static_cast<double>(a.data[i]) - b.data[i];
        acc += e * e;
    }
    return acc / static_cast<double>(a.data.size());
}

struct GradBuf {
    HarmonizerModel g = HarmonizerModel::zeros();

    // out += upstream through a linear layer; returns nothing, writes dx.
    static void linear_backward(const Linear& layer, Linear& grad_layer, const double* x,
                                const double* dy, double* dx) {
        for (int o = 0; o < layer.out; ++o) {
            const double d = dy[o];
            grad_layer.b[o] += d;
            double* grow = &grad_layer.w[static_cast<std::size_t>(o) * layer.in];
            const double* row = &layer.w[static_cast<std::size_t>(o) * layer.in];
            for (int i = 0; i < layer.in; ++i) {
                grow[i] += d * x[i];
                if (dx) dx[i] += d * row[i];
            }
        }
    }

    void encoder_backward(const HarmonizerModel& m, const EncoderTrace& tr,
                          const std::array<double, 16>& dcode) {
        double dh[32] = {};
        linear_backward(m.ref2, g.ref2, tr.hidden.data(), dcode.data(), dh);
        double dpre[32];
        for (int i = 0; i < 32; ++i) dpre[i] = dh[i] * (1.0 - tr.hidden[i] * tr.hidden[i]);
        linear_backward(m.ref1, g.ref1, tr.input.data(), dpre, nullptr);
    }

    // returns dcode (gradient w.r.t. the 16-dim appearance code)
    std::array<double, 16> fusion_backward(const HarmonizerModel& m, const FusionTrace& tr,
                                           const std::array<double, 15>& draw) {
        double dh[32] = {};
        linear_backward(m.fus2, g.fus2, tr.hidden.data(), draw.data(), dh);
        double dpre[32];
        for (int i = 0; i < 32; ++i) dpre[i] = dh[i] * (1.0 - tr.hidden[i] * tr.hidden[i]);
        double din[46] = {};
        linear_backward(m.fus1, g.fus1, tr.input.data(), dpre, din);
        std::array<double, 16> dcode;
        std::copy(din, din + 16, dcode.begin());
        return dcode;
    }
};

void require_triplet_sizes(const augment::TripletSample& t) {
    if (!t.content_a.same_size(t.content_b) || !t.content_a.same_size(t.ref_a) ||
        !t.content_a.same_size(t.ref_b))
        throw std::invalid_argument("triplet images must share dimensions");
}

}  // namespace

HarmonizerModel HarmonizerModel::init(uint64_t seed) {
    HarmonizerModel m;
    Rng rng(seed);
    uniform_init(m.ref1, rng);
    uniform_init(m.ref2, rng);
    uniform_init(m.fus1, rng);
    // fus2 stays zero: raw coefficients vanish and the initial transform is
    // exactly the identity.
    return m;
}

HarmonizerModel HarmonizerModel::zeros() { return HarmonizerModel{}; }

std::size_t HarmonizerModel::param_count() const {
    return ref1.w.size() + ref1.b.size() + ref2.w.size() + ref2.b.size() + fus1.w.size() +
           fus1.b.size() + fus2.w.size() + fus2.b.size();
}

std::vector<double> HarmonizerModel::flatten() const {
    std::vector<double> flat;
    flat.reserve(param_count());
    for (const Linear* l : {&ref1, &ref2, &fus1, &fus2}) {
        flat.insert(flat.end(), l->w.begin(), l->w.end());
        flat.insert(flat.end(), l->b.begin(), l->b.end());
    }
    return flat;
}

void HarmonizerModel::unflatten(const std::vector<double>& flat) {
    if (flat.size() != param_count())
        throw std::invalid_argument("unflatten: expected " + std::to_string(param_count()) +
                                    " parameters, got " + std::to_string(flat.size()));
    std::size_t pos = 0;
    for (Linear* l : {&ref1, &ref2, &fus1, &fus2}) {
        std::copy(flat.begin() + pos, flat.begin() + pos + l->w.size(), l->w.begin());
        pos += l->w.size();
        std::copy(flat.begin() + pos, flat.begin() + pos + l->b.size(), l->b.begin());
        pos += l->b.size();
    }
}

std::array<double, 16> ref_encode(const HarmonizerModel& m, const AppearanceFeatures& f) {
    return encoder_forward(m, f).code;
}

ColorTransform predict_transform(const HarmonizerModel& m, const AppearanceFeatures& content_feat,
                                 const AppearanceFeatures& ref_feat) {
    const EncoderTrace enc = encoder_forward(m, ref_feat);
    const FusionTrace fus = fusion_forward(m, enc.code, content_feat);
    return ColorTransform::from_raw(fus.raw);
}

Image harmonize(const HarmonizerModel& m, const Image& content, const Image& reference,
                bool clamp_output) {
    const ColorTransform t = predict_transform(m, extract_features(content), extract_features(reference));
    Image out(content.width, content.height);
    for (std::size_t p = 0; p < content.pixel_count(); ++p) {
        const auto mapped = t.apply(content.data[p * 3], content.data[p * 3 + 1], content.data[p * 3 + 2]);
        for (int c = 0; c < 3; ++c)
            out.data[p * 3 + c] =
                static_cast<float>(clamp_output ? std::clamp(mapped[c], 0.0, 1.0) : mapped[c]);
    }
    return out;
}

namespace {

double code_mse(const std::array<double, 16>& a, const std::array<double, 16>& b) {
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double e = a[i] - b[i];
        acc += e * e;
    }
    return acc / 16.0;
}

}  // namespace

LossReport loss_total(const HarmonizerModel& m, const augment::TripletSample& t, const LossWeights& w) {
    if (w.w1 < 0 || w.w2 < 0) throw std::invalid_argument("loss weights must be non-negative");
    require_triplet_sizes(t);

    const AppearanceFeatures f_ca = extract_features(t.content_a);
    const AppearanceFeatures f_ra = extract_features(t.ref_a);
    const AppearanceFeatures f_rb = extract_features(t.ref_b);

    const auto z_rb = ref_encode(m, f_rb);
    const auto z_ra = ref_encode(m, f_ra);
    const auto z_ca = ref_encode(m, f_ca);

    const ColorTransform t_harm = ColorTransform::from_raw(fusion_forward(m, z_rb, f_ca).raw);
    const ColorTransform t_recon = ColorTransform::from_raw(fusion_forward(m, z_ra, f_ca).raw);

    LossReport r;
    r.l_harm = transform_mse(t_harm, t.content_a, t.content_b, nullptr);
    r.l_recon = transform_mse(t_recon, t.content_a, t.content_a, nullptr);
    r.l_dis = code_mse(z_ca, z_ra);
    r.l_dis_content = pixel_mse(t.content_a, t.content_b);
    r.total = r.l_harm + w.w1 * r.l_recon + w.w2 * r.l_dis;
    return r;
}

std::vector<double> grad(const HarmonizerModel& m, const augment::TripletSample& t,
                         const LossWeights& w, LossReport* report) {
    if (w.w1 < 0 || w.w2 < 0) throw std::invalid_argument("loss weights must be non-negative");
    require_triplet_sizes(t);

    const AppearanceFeatures f_ca = extract_features(t.content_a);
    const AppearanceFeatures f_ra = extract_features(t.ref_a);
    const AppearanceFeatures f_rb = extract_features(t.ref_b);

    const EncoderTrace enc_rb = encoder_forward(m, f_rb);
    const EncoderTrace enc_ra = encoder_forward(m, f_ra);
    const EncoderTrace enc_ca = encoder_forward(m, f_ca);

    const FusionTrace fus_harm = fusion_forward(m, enc_rb.code, f_ca);
    const FusionTrace fus_recon = fusion_forward(m, enc_ra.code, f_ca);

    LossReport r;
    GradBuf buf;

    // harmonization path: C'_b vs C_b, unit weight
    std::array<double, 15> draw_harm;
    r.l_harm = transform_mse(ColorTransform::from_raw(fus_harm.raw), t.content_a, t.content_b, &draw_harm);
    std::array<double, 16> dz_rb = buf.fusion_backward(m, fus_harm, draw_harm);

    // reconstruction path: C'_a vs C_a, weight w1
    std::array<double, 15> draw_recon;
    r.l_recon = transform_mse(ColorTransform::from_raw(fus_recon.raw), t.content_a, t.content_a, &draw_recon);
    for (auto& v : draw_recon) v *= w.w1;
    std::array<double, 16> dz_ra = buf.fusion_backward(m, fus_recon, draw_recon);

    // disentanglement path: codes of C_a and R_a pulled together, weight w2
    r.l_dis = code_mse(enc_ca.code, enc_ra.code);
    std::array<double, 16> dz_ca{};
    for (int i = 0; i < 16; ++i) {
        const double d = w.w2 * 2.0 / 16.0 * (enc_ca.code[i] - enc_ra.code[i]);
        dz_ca[i] = d;
        dz_ra[i] -= d;
    }

    buf.encoder_backward(m, enc_rb, dz_rb);
    buf.encoder_backward(m, enc_ra, dz_ra);
    buf.encoder_backward(m, enc_ca, dz_ca);

    r.l_dis_content = pixel_mse(t.content_a, t.content_b);
    r.total = r.l_harm + w.w1 * r.l_recon + w.w2 * r.l_dis;
    if (report) *report = r;
    return buf.g.flatten();
}

std::vector<double> grad_batch(const HarmonizerModel& m, const std::vector<augment::TripletSample>& batch,
                               const LossWeights& w, LossReport* mean_report) {
    std::vector<double> acc(m.param_count(), 0.0);
    LossReport sum;
    for (const auto& t : batch) {
        LossReport r;
        const auto g = grad(m, t, w, &r);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g[i];
        sum.l_harm += r.l_harm;
        sum.l_recon += r.l_recon;
        sum.l_dis += r.l_dis;
        sum.l_dis_content += r.l_dis_content;
        sum.total += r.total;
    }
    if (mean_report && !batch.empty()) {
        const double n = static_cast<double>(batch.size());
        *mean_report = {sum.l_harm / n, sum.l_recon / n, sum.l_dis / n, sum.l_dis_content / n,
                        sum.total / n};
    }
    return acc;
}

void TrainConfig::validate() const {
    if (learning_rate <= 0) throw std::invalid_argument("train config: learning_rate must be > 0");
    if (epochs_const < 0 || epochs_decay < 0)
        throw std::invalid_argument("train config: epoch counts must be >= 0");
    if (batch_size < 1) throw std::invalid_argument("train config: batch_size must be >= 1");
    if (steps_per_epoch < 0) throw std::invalid_argument("train config: steps_per_epoch must be >= 0");
}

double lr_at_epoch(const TrainConfig& cfg, int epoch) {
    if (epoch < cfg.epochs_const) return cfg.learning_rate;
    const int k = epoch - cfg.epochs_const;
    if (cfg.epochs_decay == 0) return 0.0;
    return cfg.learning_rate * std::max(0.0, 1.0 - static_cast<double>(k) / cfg.epochs_decay);
}

TrainResult train(const std::vector<augment::CorpusImage>& corpus,
                  const std::vector<augment::BankLut>& bank, const TrainConfig& cfg,
                  const augment::AugmentConfig& aug_cfg, const LossWeights& w) {
    cfg.validate();
    aug_cfg.validate();
    if (corpus.empty()) throw std::invalid_argument("train: empty corpus");
    if (aug_cfg.appearance == augment::AppearanceMode::lut && bank.size() < 2)
        throw std::invalid_argument("train: LUT bank needs at least 2 entries");

    const int steps_per_epoch =
        cfg.steps_per_epoch > 0
            ? cfg.steps_per_epoch
            : static_cast<int>((corpus.size() + cfg.batch_size - 1) / cfg.batch_size);
    const int total_epochs = cfg.epochs_const + cfg.epochs_decay;
    const lut::Lut3d identity = lut::identity_lut(2);

    TrainResult result;
    result.model = HarmonizerModel::init(mix_seed(cfg.seed, 0x1d));
    const std::size_t n_params = result.model.param_count();
    std::vector<double> m1(n_params, 0.0), m2(n_params, 0.0);
    std::vector<double> params = result.model.flatten();
    int64_t adam_t = 0;

    auto make_triplet = [&](uint64_t sample_index) {
        Rng rng(mix_seed(cfg.seed, sample_index));
        const std::size_t img_idx =
            static_cast<std::size_t>(rng.next_int(0, static_cast<int64_t>(corpus.size()) - 1));
        std::size_t a_idx = 0, b_idx = 0;
        if (aug_cfg.appearance == augment::AppearanceMode::lut) {
            a_idx = static_cast<std::size_t>(rng.next_int(0, static_cast<int64_t>(bank.size()) - 1));
            b_idx = static_cast<std::size_t>(rng.next_int(0, static_cast<int64_t>(bank.size()) - 2));
            if (b_idx >= a_idx) ++b_idx;
        }
        const uint64_t triplet_seed = rng.next_u64();
        const auto& lut_a = aug_cfg.appearance == augment::AppearanceMode::lut ? bank[a_idx].lut : identity;
        const auto& lut_b = aug_cfg.appearance == augment::AppearanceMode::lut ? bank[b_idx].lut : identity;
        return augment::gen_triplet(corpus[img_idx].image, lut_a, lut_b, triplet_seed, aug_cfg,
                                    corpus[img_idx].id,
                                    aug_cfg.appearance == augment::AppearanceMode::lut ? bank[a_idx].id : "",
                                    aug_cfg.appearance == augment::AppearanceMode::lut ? bank[b_idx].id : "");
    };

    uint64_t sample_counter = 0;
    for (int epoch = 0; epoch < total_epochs; ++epoch) {
        const double lr = lr_at_epoch(cfg, epoch);
        LossReport epoch_sum;
        for (int step = 0; step < steps_per_epoch; ++step) {
            std::vector<augment::TripletSample> batch;
            batch.reserve(static_cast<std::size_t>(cfg.batch_size));
            for (int j = 0; j < cfg.batch_size; ++j) batch.push_back(make_triplet(sample_counter++));

            LossReport batch_mean;
            std::vector<double> g = grad_batch(result.model, batch, w, &batch_mean);
            const double inv_batch = 1.0 / static_cast<double>(cfg.batch_size);

            ++adam_t;
            const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(adam_t));
            const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(adam_t));
            for (std::size_t i = 0; i < n_params; ++i) {
                const double gi = g[i] * inv_batch;
                m1[i] = cfg.beta1 * m1[i] + (1.0 - cfg.beta1) * gi;
                m2[i] = cfg.beta2 * m2[i] + (1.0 - cfg.beta2) * gi * gi;
                params[i] -= lr * (m1[i] / bc1) / (std::sqrt(m2[i] / bc2) + cfg.eps);
            }
            result.model.unflatten(params);

            epoch_sum.l_harm += batch_mean.l_harm;
            epoch_sum.l_recon += batch_mean.l_recon;
            epoch_sum.l_dis += batch_mean.l_dis;
            epoch_sum.l_dis_content += batch_mean.l_dis_content;
            epoch_sum.total += batch_mean.total;
        }
        const double inv_steps = 1.0 / std::max(1, steps_per_epoch);
        EpochStats st;
        st.epoch = epoch;
        st.lr = lr;
        st.mean = {epoch_sum.l_harm * inv_steps, epoch_sum.l_recon * inv_steps,
                   epoch_sum.l_dis * inv_steps, epoch_sum.l_dis_content * inv_steps,
                   epoch_sum.total * inv_steps};
        result.history.push_back(st);
    }
    return result;
}

std::string save_checkpoint(const HarmonizerModel& m, const TrainConfig& cfg) {
    json j;
    j["version"] = 1;
    j["kind"] = "harmonizer_checkpoint";
    j["shapes"] = {{"ref_encoder", {{m.ref1.in, m.ref1.out}, {m.ref2.in, m.ref2.out}}},
                   {"fusion", {{m.fus1.in, m.fus1.out}, {m.fus2.in, m.fus2.out}}}};
    j["params"] = m.flatten();
    j["train_config"] = {{"learning_rate", cfg.learning_rate},
                         {"epochs_const", cfg.epochs_const},
                         {"epochs_decay", cfg.epochs_decay},
                         {"batch_size", cfg.batch_size},
                         {"steps_per_epoch", cfg.steps_per_epoch},
                         {"beta1", cfg.beta1},
                         {"beta2", cfg.beta2},
                         {"eps", cfg.eps},
                         {"seed", cfg.seed}};
    return j.dump(2) + "\n";
}

HarmonizerModel load_checkpoint(const std::string& json_text, TrainConfig* cfg_out) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("checkpoint: ") + e.what());
    }
    if (!j.contains("params") || !j.contains("shapes"))
        throw ParseError("checkpoint: missing params or shapes");

    HarmonizerModel m;
    const auto expect = [&](const json& shape, const Linear& l, const char* name) {
        if (shape[0].get<int>() != l.in || shape[1].get<int>() != l.out)
            throw ParseError(std::string("checkpoint: unexpected shape for ") + name);
    };
    expect(j["shapes"]["ref_encoder"][0], m.ref1, "ref_encoder[0]");
    expect(j["shapes"]["ref_encoder"][1], m.ref2, "ref_encoder[1]");
    expect(j["shapes"]["fusion"][0], m.fus1, "fusion[0]");
    expect(j["shapes"]["fusion"][1], m.fus2, "fusion[1]");

    std::vector<double> flat = j["params"].get<std::vector<double>>();
    m.unflatten(flat);
    if (cfg_out && j.contains("train_config")) {
        const auto& t = j["train_config"];
        cfg_out->learning_rate = t.value("learning_rate", cfg_out->learning_rate);
        cfg_out->epochs_const = t.value("epochs_const", cfg_out->epochs_const);
        cfg_out->epochs_decay = t.value("epochs_decay", cfg_out->epochs_decay);
        cfg_out->batch_size = t.value("batch_size", cfg_out->batch_size);
        cfg_out->steps_per_epoch = t.value("steps_per_epoch", cfg_out->steps_per_epoch);
        cfg_out->beta1 = t.value("beta1", cfg_out->beta1);
        cfg_out->beta2 = t.value("beta2", cfg_out->beta2);
        cfg_out->eps = t.value("eps", cfg_out->eps);
        cfg_out->seed = t.value("seed", cfg_out->seed);
    }
    return m;
}

std::string history_csv(const std::vector<EpochStats>& history) {
    std::string out = "epoch,l_harm,l_recon,l_dis,l_dis_content,total,lr\n";
    char buf[256];
    for (const auto& st : history) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", st.epoch,
                      st.mean.l_harm, st.mean.l_recon, st.mean.l_dis, st.mean.l_dis_content,
                      st.mean.total, st.lr);
        out += buf;
    }
    return out;
}

}  // namespace harmon::model
