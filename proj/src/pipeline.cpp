#include "harmon/pipeline.hpp"

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

namespace harmon::pipeline {

using json = nlohmann::ordered_json;

Image locality_crop(const Image& bg, const Rect& placement, double expand) {
    if (expand < 1.0) throw std::invalid_argument("locality_crop: expand must be >= 1");
    require_rect(placement, bg.width, bg.height, "locality_crop");

    const double cx = placement.x + placement.w / 2.0;
    const double cy = placement.y + placement.h / 2.0;
    int w = static_cast<int>(std::lround(placement.w * expand));
    int h = static_cast<int>(std::lround(placement.h * expand));
    w = std::clamp(w, std::min(32, bg.width), bg.width);
    h = std::clamp(h, std::min(32, bg.height), bg.height);
    int x = static_cast<int>(std::lround(cx - w / 2.0));
    int y = static_cast<int>(std::lround(cy - h / 2.0));
    x = std::clamp(x, 0, bg.width - w);
    y = std::clamp(y, 0, bg.height - h);
    return crop(bg, Rect{x, y, w, h});
}

Image harmonize_composite(const model::HarmonizerModel& m, const Image& fg, const Image& bg,
                          const Mask& mask, const Rect& placement, const HarmonizeOptions& opts) {
    const Image reference = opts.locality ? locality_crop(bg, placement, opts.expand) : bg;
    const Image adjusted = model::harmonize(m, fg, reference, /*clamp_output=*/true);
    return composite(adjusted, bg, mask, placement);
}

namespace {

void basis_vector(double r, double g, double b, double* phi) {
    phi[0] = 1.0;
    phi[1] = r;
    phi[2] = g;
    phi[3] = b;
    phi[4] = r * r;
    phi[5] = g * g;
    phi[6] = b * b;
    phi[7] = r * g;
    phi[8] = r * b;
    phi[9] = g * b;
}

// Gaussian elimination with partial pivoting; a is n x n, rhs is n x m.
void solve_linear(std::vector<double>& a, std::vector<double>& rhs, int n, int m) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
        if (std::abs(a[pivot * n + col]) < 1e-30)
            throw std::runtime_error("fit_color_map: singular normal equations");
        if (pivot != col) {
            for (int k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
            for (int k = 0; k < m; ++k) std::swap(rhs[col * m + k], rhs[pivot * m + k]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (int row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] * inv;
            if (f == 0.0) continue;
            for (int k = col; k < n; ++k) a[row * n + k] -= f * a[col * n + k];
            for (int k = 0; k < m; ++k) rhs[row * m + k] -= f * rhs[col * m + k];
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        const double inv = 1.0 / a[col * n + col];
        for (int k = 0; k < m; ++k) {
            double acc = rhs[col * m + k];
            for (int j = col + 1; j < n; ++j) acc -= a[col * n + j] * rhs[j * m + k];
            rhs[col * m + k] = acc * inv;
        }
    }
}

}  // namespace

PolyColorMap fit_color_map(const Image& lowres_in, const Image& lowres_out) {
    if (!lowres_in.same_size(lowres_out))
        throw std::invalid_argument("fit_color_map: image sizes differ");
    const std::size_t n = lowres_in.pixel_count();
    if (n < 1000) throw std::invalid_argument("fit_color_map: need at least 1000 pixels");

    constexpr int T = PolyColorMap::kTerms;
    std::vector<double> ata(T * T, 0.0);
    std::vector<double> atb(T * 3, 0.0);
    double in_mean[3] = {0, 0, 0}, in_sq[3] = {0, 0, 0};
    double out_mean[3] = {0, 0, 0}, out_sq[3] = {0, 0, 0};

    double phi[T];
    for (std::size_t p = 0; p < n; ++p) {
        const double r = lowres_in.data[p * 3], g = lowres_in.data[p * 3 + 1], b = lowres_in.data[p * 3 + 2];
        basis_vector(r, g, b, phi);
        for (int i = 0; i < T; ++i) {
            for (int j = i; j < T; ++j) ata[i * T + j] += phi[i] * phi[j];
            for (int c = 0; c < 3; ++c) atb[i * 3 + c] += phi[i] * lowres_out.data[p * 3 + c];
        }
        const double in_v[3] = {r, g, b};
        for (int c = 0; c < 3; ++c) {
            in_mean[c] += in_v[c];
            in_sq[c] += in_v[c] * in_v[c];
            const double o = lowres_out.data[p * 3 + c];
            out_mean[c] += o;
            out_sq[c] += o * o;
        }
    }
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < i; ++j) ata[i * T + j] = ata[j * T + i];

    // constant input cannot explain a varying output no matter the damping
    double in_var = 0.0, out_var = 0.0;
    for (int c = 0; c < 3; ++c) {
        in_var = std::max(in_var, in_sq[c] / n - (in_mean[c] / n) * (in_mean[c] / n));
        out_var = std::max(out_var, out_sq[c] / n - (out_mean[c] / n) * (out_mean[c] / n));
    }
    if (in_var < 1e-12 && out_var > 1e-8)
        throw std::runtime_error("fit_color_map: rank-deficient system (constant input, varying output)");

    for (int i = 0; i < T; ++i) ata[i * T + i] += 1e-6;  // Tikhonov damping
    solve_linear(ata, atb, T, 3);

    PolyColorMap map;
    for (int i = 0; i < T; ++i)
        for (int c = 0; c < 3; ++c) map.coef[i][c] = atb[i * 3 + c];
    return map;
}

Image apply_color_map(const PolyColorMap& map, const Image& img) {
    Image out(img.width, img.height);
    double phi[PolyColorMap::kTerms];
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        basis_vector(img.data[p * 3], img.data[p * 3 + 1], img.data[p * 3 + 2], phi);
        for (int c = 0; c < 3; ++c) {
            double acc = 0.0;
            for (int i = 0; i < PolyColorMap::kTerms; ++i) acc += map.coef[i][c] * phi[i];
            out.data[p * 3 + c] = static_cast<float>(std::clamp(acc, 0.0, 1.0));
        }
    }
    return out;
}

Image harmonize_composite_highres(const model::HarmonizerModel& m, const Image& fg, const Image& bg,
                                  const Mask& mask, const Rect& placement,
                                  const HarmonizeOptions& opts, int lowres_long_side) {
    const Image reference = opts.locality ? locality_crop(bg, placement, opts.expand) : bg;
    const int long_side = std::max(fg.width, fg.height);
    if (fg.pixel_count() <= 1000 || long_side <= lowres_long_side) {
        const Image adjusted = model::harmonize(m, fg, reference, true);
        return composite(adjusted, bg, mask, placement);
    }
    const double scale = static_cast<double>(lowres_long_side) / long_side;
    const int lw = std::max(1, static_cast<int>(std::lround(fg.width * scale)));
    const int lh = std::max(1, static_cast<int>(std::lround(fg.height * scale)));
    const Image fg_low = resize_bilinear(fg, lw, lh);

    const int ref_long = std::max(reference.width, reference.height);
    const Image ref_low =
        ref_long > lowres_long_side
            ? resize_bilinear(reference,
                              std::max(1, static_cast<int>(std::lround(reference.width * static_cast<double>(lowres_long_side) / ref_long))),
                              std::max(1, static_cast<int>(std::lround(reference.height * static_cast<double>(lowres_long_side) / ref_long))))
            : reference;

    const Image low_out = model::harmonize(m, fg_low, ref_low, true);
    const PolyColorMap map = fit_color_map(fg_low, low_out);
    const Image adjusted = apply_color_map(map, fg);
    return composite(adjusted, bg, mask, placement);
}

const char* to_string(MaskStyle s) { return s == MaskStyle::rect ? "rect" : "ellipse"; }

MaskStyle mask_style_from_string(const std::string& s) {
    if (s == "rect") return MaskStyle::rect;
    if (s == "ellipse") return MaskStyle::ellipse;
    throw std::invalid_argument("unknown mask style '" + s + "'");
}

namespace {

constexpr double kFalloffPixels = 4.0;

Mask build_mask(int w, int h, MaskStyle style) {
    Mask m(w, h);
    if (style == MaskStyle::rect) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const int d = std::min(std::min(x, w - 1 - x), std::min(y, h - 1 - y));
                m.at(x, y) = static_cast<float>(std::min(1.0, (d + 1) / kFalloffPixels));
            }
    } else {
        const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
        const double rx = w / 2.0, ry = h / 2.0;
        const double rmin = std::min(rx, ry);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double ex = (x - cx) / rx, ey = (y - cy) / ry;
                const double e = std::sqrt(ex * ex + ey * ey);
                const double d = (1.0 - e) * rmin;  // approx distance inside the ellipse
                m.at(x, y) = static_cast<float>(std::clamp(d / kFalloffPixels, 0.0, 1.0));
            }
    }
    return m;
}

}  // namespace

std::vector<BenchmarkCase> synth_benchmark(const std::vector<augment::CorpusImage>& images,
                                           const std::vector<augment::BankLut>& heldout_luts,
                                           int count, uint64_t seed, MaskStyle style) {
    if (images.empty()) throw std::invalid_argument("synth_benchmark: empty image list");
    if (heldout_luts.empty()) throw std::invalid_argument("synth_benchmark: empty held-out LUT list");
    if (count < 0) throw std::invalid_argument("synth_benchmark: negative count");

    std::vector<BenchmarkCase> cases;
    cases.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Rng rng(mix_seed(seed, static_cast<uint64_t>(i)));
        const auto& src = images[static_cast<std::size_t>(rng.next_int(0, static_cast<int64_t>(images.size()) - 1))];
        const Image& gt = src.image;
        if (gt.width < 32 || gt.height < 32)
            throw std::invalid_argument("synth_benchmark: image '" + src.id + "' too small for placement bounds");

        Rect placement;
        bool ok = false;
        const double area = static_cast<double>(gt.width) * gt.height;
        for (int draw = 0; draw < 10000 && !ok; ++draw) {
            const double frac = rng.next_in(0.10, 0.60);
            const double aspect = rng.next_in(0.6, 1.667);
            int w = static_cast<int>(std::lround(std::sqrt(frac * area * aspect)));
            int h = static_cast<int>(std::lround(std::sqrt(frac * area / aspect)));
            w = std::clamp(w, 8, gt.width);
            h = std::clamp(h, 8, gt.height);
            const double got = static_cast<double>(w) * h / area;
            if (got < 0.10 || got > 0.60) continue;
            placement = Rect{static_cast<int>(rng.next_int(0, gt.width - w)),
                             static_cast<int>(rng.next_int(0, gt.height - h)), w, h};
            ok = true;
        }
        if (!ok)
            throw std::runtime_error("synth_benchmark: no placement in the area window for image '" + src.id + "'");

        const auto& held =
            heldout_luts[static_cast<std::size_t>(rng.next_int(0, static_cast<int64_t>(heldout_luts.size()) - 1))];

        BenchmarkCase c;
        c.index = i;
        c.image_id = src.id;
        c.heldout_lut_id = held.id;
        c.ground_truth = gt;
        c.background = gt;
        c.placement = placement;
        c.foreground = lut::apply_lut_image(held.lut, crop(gt, placement));
        c.mask = build_mask(placement.w, placement.h, style);
        cases.push_back(std::move(c));
    }
    return cases;
}

namespace {

json rect_to_json(const Rect& r) { return json::array({r.x, r.y, r.w, r.h}); }

Rect rect_from_json(const json& j) {
    return Rect{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;  // +inf PSNR sentinel serializes as null
}

}  // namespace

std::string write_benchmark(const std::vector<BenchmarkCase>& cases,
                            const std::filesystem::path& out_dir, uint64_t seed, MaskStyle style) {
    std::filesystem::create_directories(out_dir);
    json manifest;
    manifest["version"] = 1;
    manifest["kind"] = "benchmark";
    manifest["seed"] = seed;
    manifest["mask_style"] = to_string(style);
    manifest["count"] = static_cast<int>(cases.size());
    manifest["cases"] = json::array();

    for (const auto& c : cases) {
        char stem[16];
        std::snprintf(stem, sizeof stem, "%06d", c.index);
        json files, hashes;
        const auto emit = [&](const char* tag, const std::vector<uint8_t>& bytes) {
            const std::string name = std::string(stem) + "_" + tag + ".png";
            write_file(out_dir / name, bytes);
            files[tag] = name;
            hashes[tag] = sha256_hex(bytes);
        };
        emit("bg", encode_image(c.background, ImageFormat::png8));
        emit("fg", encode_image(c.foreground, ImageFormat::png8));
        emit("mask", encode_mask(c.mask, ImageFormat::png8));
        emit("gt", encode_image(c.ground_truth, ImageFormat::png8));

        json rec;
        rec["index"] = c.index;
        rec["image_id"] = c.image_id;
        rec["heldout_lut_id"] = c.heldout_lut_id;
        rec["placement"] = rect_to_json(c.placement);
        rec["files"] = files;
        rec["sha256"] = hashes;
        manifest["cases"].push_back(std::move(rec));
    }

    const std::string text = manifest.dump(2) + "\n";
    std::ofstream out(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_benchmark: cannot write manifest");
    out << text;
    return text;
}

std::vector<BenchmarkCase> read_benchmark(const std::filesystem::path& dir) {
    const auto bytes = read_file(dir / "manifest.json");
    json manifest;
    try {
        manifest = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("benchmark manifest: ") + e.what());
    }
    std::vector<BenchmarkCase> cases;
    for (const auto& rec : manifest.at("cases")) {
        BenchmarkCase c;
        c.index = rec.at("index").get<int>();
        c.image_id = rec.value("image_id", "");
        c.heldout_lut_id = rec.value("heldout_lut_id", "");
        c.placement = rect_from_json(rec.at("placement"));
        const auto& files = rec.at("files");
        c.background = load_image(dir / files.at("bg").get<std::string>());
        c.foreground = load_image(dir / files.at("fg").get<std::string>());
        c.mask = load_mask(dir / files.at("mask").get<std::string>());
        c.ground_truth = load_image(dir / files.at("gt").get<std::string>());
        cases.push_back(std::move(c));
    }
    return cases;
}

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchmarkSummary run_benchmark(const model::HarmonizerModel& m, const std::vector<BenchmarkCase>& cases,
                               const HarmonizeOptions& opts, int workers) {
    if (cases.empty()) throw std::invalid_argument("run_benchmark: no cases");

    BenchmarkSummary s;
    s.total = static_cast<int>(cases.size());
    s.cases.resize(cases.size());

    std::atomic<std::size_t> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;

    auto worker_fn = [&]() {
        try {
            for (std::size_t i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1)) {
                const auto& c = cases[i];
                const Image harmonized = harmonize_composite(m, c.foreground, c.background, c.mask,
                                                             c.placement, opts);
                const Image dc = composite(c.foreground, c.background, c.mask, c.placement);
                const Image h = resize_bilinear(harmonized, 256, 256);
                const Image d = resize_bilinear(dc, 256, 256);
                const Image g = resize_bilinear(c.ground_truth, 256, 256);
                s.cases[i] = CaseResult{c.index, metrics::evaluate_pair(h, g, d)};
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
        for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> mm, mp, ms, bm, bp, bs;
    for (const auto& cr : s.cases) {
        mm.push_back(cr.reports.method.mse);
        mp.push_back(cr.reports.method.psnr);
        ms.push_back(cr.reports.method.ssim);
        bm.push_back(cr.reports.baseline.mse);
        bp.push_back(cr.reports.baseline.psnr);
        bs.push_back(cr.reports.baseline.ssim);
        if (cr.reports.method.mse < cr.reports.baseline.mse) ++s.wins_mse;
    }
    const auto mean_of = [](const std::vector<double>& v) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc / static_cast<double>(v.size());
    };
    s.method_mean = {mean_of(mm), mean_of(mp), mean_of(ms)};
    s.method_median = {median_of(mm), median_of(mp), median_of(ms)};
    s.baseline_mean = {mean_of(bm), mean_of(bp), mean_of(bs)};
    s.baseline_median = {median_of(bm), median_of(bp), median_of(bs)};
    return s;
}

std::string summary_json(const BenchmarkSummary& s) {
    json j;
    j["cases"] = json::array();
    for (const auto& cr : s.cases) {
        json rec;
        rec["case_id"] = cr.index;
        rec["method"] = {{"mse", cr.reports.method.mse},
                         {"psnr", finite_or_null(cr.reports.method.psnr)},
                         {"ssim", cr.reports.method.ssim}};
        rec["baseline"] = {{"mse", cr.reports.baseline.mse},
                           {"psnr", finite_or_null(cr.reports.baseline.psnr)},
                           {"ssim", cr.reports.baseline.ssim}};
        j["cases"].push_back(std::move(rec));
    }
    const auto agg = [](const metrics::Report& r) {
        return json{{"mse", r.mse}, {"psnr", finite_or_null(r.psnr)}, {"ssim", r.ssim}};
    };
    j["aggregate"] = {{"method", {{"mean", agg(s.method_mean)}, {"median", agg(s.method_median)}}},
                      {"baseline", {{"mean", agg(s.baseline_mean)}, {"median", agg(s.baseline_median)}}},
                      {"wins_mse", s.wins_mse},
                      {"total", s.total}};
    return j.dump(2) + "\n";
}

std::string summary_csv(const BenchmarkSummary& s) {
    std::string out = "case_id,mse,psnr,ssim,baseline_mse,baseline_psnr,baseline_ssim\n";
    char buf[256];
    const auto row = [&](const std::string& id, const metrics::Report& a, const metrics::Report& b) {
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", id.c_str(), a.mse, a.psnr,
                      a.ssim, b.mse, b.psnr, b.ssim);
        out += buf;
    };
    for (const auto& cr : s.cases) row(std::to_string(cr.index), cr.reports.method, cr.reports.baseline);
    row("mean", s.method_mean, s.baseline_mean);
    row("median", s.method_median, s.baseline_median);
    return out;
}

}  // namespace harmon::pipeline
