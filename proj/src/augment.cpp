#include "harmon/augment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "harmon/codec.hpp"
#include "harmon/error.hpp"
#include "harmon/rng.hpp"
#include "harmon/sha256.hpp"

namespace harmon::augment {

using json = nlohmann::ordered_json;

const char* to_string(CropMode m) { return m == CropMode::multi_crop ? "multi_crop" : "single_crop"; }

const char* to_string(AppearanceMode m) {
    switch (m) {
        case AppearanceMode::lut: return "lut";
        case AppearanceMode::color_transfer: return "color_transfer";
        default: return "saturation";
    }
}

CropMode crop_mode_from_string(const std::string& s) {
    if (s == "multi_crop") return CropMode::multi_crop;
    if (s == "single_crop") return CropMode::single_crop;
    throw std::invalid_argument("unknown crop mode '" + s + "'");
}

AppearanceMode appearance_mode_from_string(const std::string& s) {
    if (s == "lut") return AppearanceMode::lut;
    if (s == "color_transfer") return AppearanceMode::color_transfer;
    if (s == "saturation") return AppearanceMode::saturation;
    throw std::invalid_argument("unknown appearance mode '" + s + "'");
}

void AugmentConfig::validate() const {
    if (jitter_min < 1 || jitter_max < jitter_min)
        throw std::invalid_argument("augment config: need 1 <= jitter_min <= jitter_max");
    if (crop_size < 1 || crop_size > jitter_min)
        throw std::invalid_argument("augment config: need 1 <= crop_size <= jitter_min");
    if (!(0.0 <= overlap_min && overlap_min <= overlap_max && overlap_max <= 1.0))
        throw std::invalid_argument("augment config: need 0 <= overlap_min <= overlap_max <= 1");
    if (min_offset < 0) throw std::invalid_argument("augment config: min_offset must be >= 0");
}

namespace {

constexpr int kMaxRejectionDraws = 10000;

double overlap_fraction(const Rect& a, const Rect& b) {
    const int x0 = std::max(a.x, b.x);
    const int y0 = std::max(a.y, b.y);
    const int x1 = std::min(a.x + a.w, b.x + b.w);
    const int y1 = std::min(a.y + a.h, b.y + b.h);
    if (x1 <= x0 || y1 <= y0) return 0.0;
    return static_cast<double>(x1 - x0) * (y1 - y0) / (static_cast<double>(a.w) * a.h);
}

}  // namespace

CropPair sample_crop_pair(const Image& image, uint64_t seed, const AugmentConfig& cfg) {
    cfg.validate();
    const int short_side = std::min(image.width, image.height);
    if (short_side < 64)
        throw std::invalid_argument("sample_crop_pair: image short side " + std::to_string(short_side) +
                                    " below minimum 64");

    Rng rng(seed);
    const int target_short = static_cast<int>(rng.next_int(cfg.jitter_min, cfg.jitter_max));
    int new_w, new_h;
    if (image.width <= image.height) {
        new_w = target_short;
        new_h = std::max(target_short,
                         static_cast<int>(std::lround(static_cast<double>(image.height) * target_short / image.width)));
    } else {
        new_h = target_short;
        new_w = std::max(target_short,
                         static_cast<int>(std::lround(static_cast<double>(image.width) * target_short / image.height)));
    }

    CropPair out;
    out.resized = resize_bilinear(image, new_w, new_h);
    const int max_x = new_w - cfg.crop_size;
    const int max_y = new_h - cfg.crop_size;

    if (cfg.crop_mode == CropMode::single_crop) {
        const Rect r{static_cast<int>(rng.next_int(0, max_x)), static_cast<int>(rng.next_int(0, max_y)),
                     cfg.crop_size, cfg.crop_size};
        out.content = r;
        out.reference = r;
        return out;
    }

    for (int draw = 0; draw < kMaxRejectionDraws; ++draw) {
        const Rect a{static_cast<int>(rng.next_int(0, max_x)), static_cast<int>(rng.next_int(0, max_y)),
                     cfg.crop_size, cfg.crop_size};
        const Rect b{static_cast<int>(rng.next_int(0, max_x)), static_cast<int>(rng.next_int(0, max_y)),
                     cfg.crop_size, cfg.crop_size};
        const double ov = overlap_fraction(a, b);
        if (ov < cfg.overlap_min || ov > cfg.overlap_max) continue;
        if (std::abs(a.x - b.x) < cfg.min_offset && std::abs(a.y - b.y) < cfg.min_offset) continue;
        out.content = a;
        out.reference = b;
        return out;
    }
    throw std::runtime_error("sample_crop_pair: no crop pair satisfying the overlap window after " +
                             std::to_string(kMaxRejectionDraws) + " draws (degenerate geometry)");
}

namespace {

struct AppearanceParams {
    std::array<double, 3> ct_mean;
    std::array<double, 3> ct_std;
    double sat_factor = 1.0;
};

AppearanceParams draw_appearance(Rng& rng) {
    AppearanceParams p;
    for (int c = 0; c < 3; ++c) p.ct_mean[c] = rng.next_in(0.25, 0.75);
    for (int c = 0; c < 3; ++c) p.ct_std[c] = rng.next_in(0.05, 0.30);
    p.sat_factor = rng.next_in(0.25, 1.75);
    return p;
}

Image apply_appearance(const Image& src, AppearanceMode mode, const lut::Lut3d& lut,
                       const AppearanceParams& p) {
    switch (mode) {
        case AppearanceMode::lut: return lut::apply_lut_image(lut, src);
        case AppearanceMode::color_transfer: return color_transfer_meanstd(src, p.ct_mean, p.ct_std);
        default: return saturation_jitter(src, p.sat_factor);
    }
}

}  // namespace

TripletSample gen_triplet(const Image& image, const lut::Lut3d& lut_a, const lut::Lut3d& lut_b,
                          uint64_t seed, const AugmentConfig& cfg, const std::string& image_id,
                          const std::string& lut_a_id, const std::string& lut_b_id) {
    if (cfg.appearance == AppearanceMode::lut && !lut_a_id.empty() && lut_a_id == lut_b_id)
        throw std::invalid_argument("gen_triplet: lut_a and lut_b must differ by id");

    const CropPair pair = sample_crop_pair(image, mix_seed(seed, 1), cfg);
    Rng rng(mix_seed(seed, 2));
    const AppearanceParams pa = draw_appearance(rng);
    const AppearanceParams pb = draw_appearance(rng);

    const Image content = crop(pair.resized, pair.content);
    const Image reference = crop(pair.resized, pair.reference);

    TripletSample t;
    t.content_a = apply_appearance(content, cfg.appearance, lut_a, pa);
    t.content_b = apply_appearance(content, cfg.appearance, lut_b, pb);
    t.ref_a = apply_appearance(reference, cfg.appearance, lut_a, pa);
    t.ref_b = apply_appearance(reference, cfg.appearance, lut_b, pb);
    t.provenance = {image_id, seed, pair.content, pair.reference, lut_a_id, lut_b_id};
    return t;
}

Image color_transfer_meanstd(const Image& src, const std::array<double, 3>& target_mean,
                             const std::array<double, 3>& target_std) {
    for (int c = 0; c < 3; ++c)
        if (target_std[c] < 0.0) throw std::invalid_argument("color_transfer: target std must be >= 0");

    const std::size_t n = src.pixel_count();
    double mean[3] = {0, 0, 0};
    double sq[3] = {0, 0, 0};
    for (std::size_t p = 0; p < n; ++p)
        for (int c = 0; c < 3; ++c) {
            const double v = src.data[p * 3 + c];
            mean[c] += v;
            sq[c] += v * v;
        }
    double stddev[3];
    for (int c = 0; c < 3; ++c) {
        mean[c] /= static_cast<double>(n);
        stddev[c] = std::sqrt(std::max(0.0, sq[c] / static_cast<double>(n) - mean[c] * mean[c]));
    }

    Image out(src.width, src.height);
    for (std::size_t p = 0; p < n; ++p)
        for (int c = 0; c < 3; ++c) {
            const double v = src.data[p * 3 + c];
            const double mapped = (v - mean[c]) / std::max(stddev[c], 1e-6) * target_std[c] + target_mean[c];
            out.data[p * 3 + c] = static_cast<float>(std::clamp(mapped, 0.0, 1.0));
        }
    return out;
}

Image saturation_jitter(const Image& src, double factor) {
    if (factor < 0.0) throw std::invalid_argument("saturation_jitter: factor must be >= 0");
    Image out(src.width, src.height);
    for (std::size_t p = 0; p < src.pixel_count(); ++p) {
        const double r = src.data[p * 3], g = src.data[p * 3 + 1], b = src.data[p * 3 + 2];
        const double gray = 0.299 * r + 0.587 * g + 0.114 * b;
        out.data[p * 3] = static_cast<float>(std::clamp(gray + factor * (r - gray), 0.0, 1.0));
        out.data[p * 3 + 1] = static_cast<float>(std::clamp(gray + factor * (g - gray), 0.0, 1.0));
        out.data[p * 3 + 2] = static_cast<float>(std::clamp(gray + factor * (b - gray), 0.0, 1.0));
    }
    return out;
}

namespace {

json rect_to_json(const Rect& r) { return json::array({r.x, r.y, r.w, r.h}); }

json config_to_json(const AugmentConfig& cfg) {
    json j;
    j["jitter_min"] = cfg.jitter_min;
    j["jitter_max"] = cfg.jitter_max;
    j["crop_size"] = cfg.crop_size;
    j["overlap_min"] = cfg.overlap_min;
    j["overlap_max"] = cfg.overlap_max;
    j["min_offset"] = cfg.min_offset;
    j["crop_mode"] = to_string(cfg.crop_mode);
    j["appearance"] = to_string(cfg.appearance);
    return j;
}

}  // namespace

std::string gen_dataset(const std::vector<CorpusImage>& corpus, const std::vector<BankLut>& bank,
                        int count, uint64_t master_seed, const AugmentConfig& cfg,
                        const std::filesystem::path& out_dir, int workers) {
    cfg.validate();
    if (corpus.empty()) throw std::invalid_argument("gen_dataset: empty corpus");
    if (cfg.appearance == AppearanceMode::lut && bank.size() < 2)
        throw std::invalid_argument("gen_dataset: LUT bank needs at least 2 entries for ordered distinct pairs");
    if (count < 0) throw std::invalid_argument("gen_dataset: negative count");

    std::filesystem::create_directories(out_dir);
    const lut::Lut3d identity = lut::identity_lut(2);  // placeholder for non-lut modes

    std::vector<json> records(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;

    auto worker_fn = [&]() {
        try {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                const uint64_t seed_i = mix_seed(master_seed, static_cast<uint64_t>(i));
                Rng rng(seed_i);
                const std::size_t img_idx = static_cast<std::size_t>(rng.next_int(0, static_cast<int64_t>(corpus.size()) - 1));
                std::size_t a_idx = 0, b_idx = 0;
                if (cfg.appearance == AppearanceMode::lut) {
                    a_idx = static_cast<std::size_t>(rng.next_int(0, static_cast<int64_t>(bank.size()) - 1));
                    b_idx = static_cast<std::size_t>(rng.next_int(0, static_cast<int64_t>(bank.size()) - 2));
                    if (b_idx >= a_idx) ++b_idx;  // ordered distinct pair
                }
                const uint64_t triplet_seed = rng.next_u64();

                const auto& lut_a = cfg.appearance == AppearanceMode::lut ? bank[a_idx].lut : identity;
                const auto& lut_b = cfg.appearance == AppearanceMode::lut ? bank[b_idx].lut : identity;
                const std::string lut_a_id = cfg.appearance == AppearanceMode::lut ? bank[a_idx].id : "";
                const std::string lut_b_id = cfg.appearance == AppearanceMode::lut ? bank[b_idx].id : "";

                const TripletSample t = gen_triplet(corpus[img_idx].image, lut_a, lut_b, triplet_seed, cfg,
                                                    corpus[img_idx].id, lut_a_id, lut_b_id);

                char stem[16];
                std::snprintf(stem, sizeof stem, "%06d", i);
                const std::array<std::pair<const char*, const Image*>, 4> parts = {
                    std::pair{"ca", &t.content_a}, std::pair{"cb", &t.content_b},
                    std::pair{"ra", &t.ref_a}, std::pair{"rb", &t.ref_b}};

                json files, hashes;
                for (const auto& [tag, img] : parts) {
                    const std::string name = std::string(stem) + "_" + tag + ".png";
                    const auto bytes = encode_image(*img, ImageFormat::png8);
                    write_file(out_dir / name, bytes);
                    files[tag] = name;
                    hashes[tag] = sha256_hex(bytes);
                }

                json rec;
                rec["index"] = i;
                rec["image_id"] = t.provenance.image_id;
                rec["lut_a"] = t.provenance.lut_a;
                rec["lut_b"] = t.provenance.lut_b;
                rec["seed"] = t.provenance.seed;
                rec["content_rect"] = rect_to_json(t.provenance.content_rect);
                rec["ref_rect"] = rect_to_json(t.provenance.ref_rect);
                rec["files"] = files;
                rec["sha256"] = hashes;
                records[static_cast<std::size_t>(i)] = std::move(rec);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(fail_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    const int n_threads = std::max(1, workers);
    if (n_threads == 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    json manifest;
    manifest["version"] = 1;
    manifest["kind"] = "triplet_dataset";
    manifest["master_seed"] = master_seed;
    manifest["count"] = count;
    manifest["config"] = config_to_json(cfg);
    manifest["samples"] = json::array();
    for (auto& rec : records) manifest["samples"].push_back(std::move(rec));

    const std::string text = manifest.dump(2) + "\n";
    std::ofstream out(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("gen_dataset: cannot write manifest to " + out_dir.string());
    out << text;
    return text;
}

}  // namespace harmon::augment
