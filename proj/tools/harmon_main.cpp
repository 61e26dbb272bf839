// harmon: command-line front end for the self-supervised image harmonization
// toolkit. Every command is replayable: outputs are a pure function of the
// inputs and the resolved config, which is echoed next to the outputs.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harmon/augment.hpp"
#include "harmon/codec.hpp"
#include "harmon/error.hpp"
#include "harmon/harmonizer.hpp"
#include "harmon/lut.hpp"
#include "harmon/pipeline.hpp"
#include "harmon/rng.hpp"
#include "harmon/toml.hpp"

namespace fs = std::filesystem;
using namespace harmon;

namespace {

struct Settings {
    augment::AugmentConfig aug;
    model::TrainConfig train;
    model::LossWeights loss;
    int bench_count = 50;
    uint64_t bench_seed = 0;
    std::string mask_style = "rect";
    bool locality = true;
    double expand = 2.0;
    int workers = 1;
};

toml::Table settings_to_toml(const Settings& s) {
    toml::Table t;
    auto& aug = t["augment"];
    aug["jitter_min"] = static_cast<int64_t>(s.aug.jitter_min);
    aug["jitter_max"] = static_cast<int64_t>(s.aug.jitter_max);
    aug["crop_size"] = static_cast<int64_t>(s.aug.crop_size);
    aug["overlap_min"] = s.aug.overlap_min;
    aug["overlap_max"] = s.aug.overlap_max;
    aug["min_offset"] = static_cast<int64_t>(s.aug.min_offset);
    aug["crop_mode"] = std::string(augment::to_string(s.aug.crop_mode));
    aug["appearance"] = std::string(augment::to_string(s.aug.appearance));
    auto& tr = t["train"];
    tr["learning_rate"] = s.train.learning_rate;
    tr["epochs_const"] = static_cast<int64_t>(s.train.epochs_const);
    tr["epochs_decay"] = static_cast<int64_t>(s.train.epochs_decay);
    tr["steps_per_epoch"] = static_cast<int64_t>(s.train.steps_per_epoch);
    tr["batch_size"] = static_cast<int64_t>(s.train.batch_size);
    tr["seed"] = static_cast<int64_t>(s.train.seed);
    auto& lo = t["loss"];
    lo["w1"] = s.loss.w1;
    lo["w2"] = s.loss.w2;
    auto& be = t["bench"];
    be["count"] = static_cast<int64_t>(s.bench_count);
    be["seed"] = static_cast<int64_t>(s.bench_seed);
    be["mask_style"] = s.mask_style;
    be["locality"] = s.locality;
    be["expand"] = s.expand;
    be["workers"] = static_cast<int64_t>(s.workers);
    return t;
}

void settings_from_toml(Settings& s, const toml::Table& t) {
    toml::get(t, "augment", "jitter_min", s.aug.jitter_min);
    toml::get(t, "augment", "jitter_max", s.aug.jitter_max);
    toml::get(t, "augment", "crop_size", s.aug.crop_size);
    toml::get(t, "augment", "overlap_min", s.aug.overlap_min);
    toml::get(t, "augment", "overlap_max", s.aug.overlap_max);
    toml::get(t, "augment", "min_offset", s.aug.min_offset);
    std::string mode;
    if (toml::get(t, "augment", "crop_mode", mode)) s.aug.crop_mode = augment::crop_mode_from_string(mode);
    if (toml::get(t, "augment", "appearance", mode))
        s.aug.appearance = augment::appearance_mode_from_string(mode);
    toml::get(t, "train", "learning_rate", s.train.learning_rate);
    toml::get(t, "train", "epochs_const", s.train.epochs_const);
    toml::get(t, "train", "epochs_decay", s.train.epochs_decay);
    toml::get(t, "train", "steps_per_epoch", s.train.steps_per_epoch);
    toml::get(t, "train", "batch_size", s.train.batch_size);
    toml::get(t, "train", "seed", s.train.seed);
    toml::get(t, "loss", "w1", s.loss.w1);
    toml::get(t, "loss", "w2", s.loss.w2);
    toml::get(t, "bench", "count", s.bench_count);
    toml::get(t, "bench", "seed", s.bench_seed);
    toml::get(t, "bench", "mask_style", s.mask_style);
    toml::get(t, "bench", "locality", s.locality);
    toml::get(t, "bench", "expand", s.expand);
    toml::get(t, "bench", "workers", s.workers);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    const auto bytes = read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

void echo_config(const Settings& s, const fs::path& dir) {
    fs::create_directories(dir);
    write_text(dir / "config.toml", toml::write(settings_to_toml(s)));
}

bool has_image_extension(const fs::path& p) {
    const std::string ext = p.extension().string();
    return ext == ".png" || ext == ".ppm" || ext == ".pnm";
}

std::vector<augment::CorpusImage> load_corpus(const fs::path& dir) {
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && has_image_extension(entry.path())) paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    std::vector<augment::CorpusImage> corpus;
    for (const auto& p : paths) corpus.push_back({p.stem().string(), load_image(p)});
    if (corpus.empty()) throw std::invalid_argument("no images found in " + dir.string());
    return corpus;
}

std::vector<augment::BankLut> load_bank(const fs::path& dir) {
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".cube") paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    std::vector<augment::BankLut> bank;
    for (const auto& p : paths) bank.push_back({p.stem().string(), lut::parse_cube(read_text(p))});
    if (bank.empty()) throw std::invalid_argument("no .cube files found in " + dir.string());
    return bank;
}

Rect parse_rect_flag(const std::string& text) {
    Rect r;
    if (std::sscanf(text.c_str(), "%d,%d,%d,%d", &r.x, &r.y, &r.w, &r.h) != 4)
        throw std::invalid_argument("placement must be x,y,w,h");
    return r;
}

model::HarmonizerModel load_model(const fs::path& path) {
    return model::load_checkpoint(read_text(path));
}

void bind_config_flag(CLI::App* cmd, std::string& config_path) {
    cmd->add_option("--config", config_path, "TOML config file (flags override file values)");
}

void bind_augment_flags(CLI::App* cmd, Settings& s) {
    cmd->add_option("--jitter-min", s.aug.jitter_min, "short side lower bound after resize");
    cmd->add_option("--jitter-max", s.aug.jitter_max, "short side upper bound after resize");
    cmd->add_option("--crop-size", s.aug.crop_size, "crop size in pixels");
    cmd->add_option("--overlap-min", s.aug.overlap_min, "min crop overlap fraction");
    cmd->add_option("--overlap-max", s.aug.overlap_max, "max crop overlap fraction");
    cmd->add_option("--min-offset", s.aug.min_offset, "min crop offset in pixels");
    cmd->add_option(
        "--mode",
        [&s](const std::vector<std::string>& v) {
            s.aug.crop_mode = augment::crop_mode_from_string(v[0]);
            return true;
        },
        "content mode: multi_crop|single_crop");
    cmd->add_option(
        "--appearance",
        [&s](const std::vector<std::string>& v) {
            s.aug.appearance = augment::appearance_mode_from_string(v[0]);
            return true;
        },
        "appearance mode: lut|color_transfer|saturation");
}

void bind_train_flags(CLI::App* cmd, Settings& s) {
    cmd->add_option("--lr", s.train.learning_rate, "learning rate");
    cmd->add_option("--epochs-const", s.train.epochs_const, "epochs at constant lr");
    cmd->add_option("--epochs-decay", s.train.epochs_decay, "epochs of linear decay to 0");
    cmd->add_option("--steps-per-epoch", s.train.steps_per_epoch, "steps per epoch (0 = derive)");
    cmd->add_option("--batch", s.train.batch_size, "batch size");
    cmd->add_option("--seed", s.train.seed, "training seed");
    cmd->add_option("--w1", s.loss.w1, "reconstruction loss weight");
    cmd->add_option("--w2", s.loss.w2, "disentanglement loss weight");
    cmd->add_flag(
        "--no-recon-loss", [&s](int64_t) { s.loss.w1 = 0.0; }, "drop the reconstruction term");
    cmd->add_flag(
        "--no-dis-loss", [&s](int64_t) { s.loss.w2 = 0.0; }, "drop the disentanglement term");
}

void bind_locality_flags(CLI::App* cmd, Settings& s) {
    cmd->add_flag("--locality,!--no-locality", s.locality, "locality-aware reference cropping");
    cmd->add_option("--expand", s.expand, "locality crop expansion factor");
}

void bind_bench_flags(CLI::App* cmd, Settings& s) {
    cmd->add_option("--count", s.bench_count, "benchmark case count");
    cmd->add_option("--bench-seed", s.bench_seed, "benchmark seed");
    cmd->add_option("--mask-style", s.mask_style, "rect|ellipse");
    bind_locality_flags(cmd, s);
}

void bind_workers_flag(CLI::App* cmd, Settings& s) {
    cmd->add_option("--workers,-w", s.workers, "worker threads for generation/benchmark");
}

// ------------------------------------------------------------------ lut

int cmd_lut_validate(const fs::path& file, const fs::path& canonical_out) {
    const lut::Lut3d l = lut::parse_cube(read_text(file));
    std::cout << "ok: size " << l.size << ", " << l.table.size() / 3 << " entries\n";
    if (!canonical_out.empty()) write_text(canonical_out, lut::write_cube(l));
    return 0;
}

int cmd_lut_apply(const fs::path& lut_file, const fs::path& in, const fs::path& out) {
    const lut::Lut3d l = lut::parse_cube(read_text(lut_file));
    save_image(lut::apply_lut_image(l, load_image(in)), out);
    return 0;
}

int cmd_lut_gen(const fs::path& out_dir, int count, uint64_t seed, double strength, int size) {
    fs::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
        lut::Lut3d l = lut::random_smooth_lut(mix_seed(seed, static_cast<uint64_t>(i)), strength, size);
        char name[32];
        std::snprintf(name, sizeof name, "lut_%04d.cube", i);
        write_text(out_dir / name, lut::write_cube(l));
    }
    std::cout << "wrote " << count << " LUTs to " << out_dir.string() << "\n";
    return 0;
}

// ------------------------------------------------------------------ commands

int cmd_gen_triplets(const Settings& s, const fs::path& corpus_dir, const fs::path& bank_dir,
                     const fs::path& out_dir, int count, uint64_t seed) {
    const auto corpus = load_corpus(corpus_dir);
    std::vector<augment::BankLut> bank;
    if (s.aug.appearance == augment::AppearanceMode::lut) {
        if (bank_dir.empty()) throw std::invalid_argument("gen-triplets: --bank is required in lut mode");
        bank = load_bank(bank_dir);
    }
    augment::gen_dataset(corpus, bank, count, seed, s.aug, out_dir, s.workers);
    echo_config(s, out_dir);
    std::cout << "wrote " << count << " triplets to " << out_dir.string() << "\n";
    return 0;
}

int cmd_train(const Settings& s, const fs::path& corpus_dir, const fs::path& bank_dir,
              const fs::path& out_dir) {
    const auto corpus = load_corpus(corpus_dir);
    std::vector<augment::BankLut> bank;
    if (s.aug.appearance == augment::AppearanceMode::lut) {
        if (bank_dir.empty()) throw std::invalid_argument("train: --bank is required in lut mode");
        bank = load_bank(bank_dir);
    }

    const auto result = model::train(corpus, bank, s.train, s.aug, s.loss);
    fs::create_directories(out_dir);
    write_text(out_dir / "checkpoint.json", model::save_checkpoint(result.model, s.train));
    write_text(out_dir / "history.csv", model::history_csv(result.history));
    echo_config(s, out_dir);
    if (!result.history.empty())
        std::cout << "final epoch total loss: " << result.history.back().mean.total << "\n";
    std::cout << "checkpoint: " << (out_dir / "checkpoint.json").string() << "\n";
    return 0;
}

int cmd_harmonize(const Settings& s, const fs::path& model_file, const fs::path& fg_file,
                  const fs::path& bg_file, const fs::path& mask_file, const std::string& placement_str,
                  bool highres, const fs::path& out_file) {
    const auto m = load_model(model_file);
    const Image fg = load_image(fg_file);
    const Image bg = load_image(bg_file);
    const Mask mask = load_mask(mask_file);

    const Rect placement =
        placement_str.empty()
            ? Rect{(bg.width - fg.width) / 2, (bg.height - fg.height) / 2, fg.width, fg.height}
            : parse_rect_flag(placement_str);

    const pipeline::HarmonizeOptions opts{s.locality, s.expand};
    const Image out = highres ? pipeline::harmonize_composite_highres(m, fg, bg, mask, placement, opts)
                              : pipeline::harmonize_composite(m, fg, bg, mask, placement, opts);
    save_image(out, out_file);

    fs::path echo_path = out_file;
    echo_path.replace_extension(".config.toml");
    write_text(echo_path, toml::write(settings_to_toml(s)));
    std::cout << "wrote " << out_file.string() << "\n";
    return 0;
}

int cmd_evaluate(const Settings& s, const fs::path& model_file, const fs::path& corpus_dir,
                 const fs::path& heldout_dir, const fs::path& out_dir) {
    const auto m = load_model(model_file);
    const auto corpus = load_corpus(corpus_dir);
    const auto heldout = load_bank(heldout_dir);

    const auto style = pipeline::mask_style_from_string(s.mask_style);
    const auto cases = pipeline::synth_benchmark(corpus, heldout, s.bench_count, s.bench_seed, style);
    pipeline::write_benchmark(cases, out_dir / "benchmark", s.bench_seed, style);

    const auto summary =
        pipeline::run_benchmark(m, cases, pipeline::HarmonizeOptions{s.locality, s.expand}, s.workers);
    fs::create_directories(out_dir);
    write_text(out_dir / "report.json", pipeline::summary_json(summary));
    write_text(out_dir / "report.csv", pipeline::summary_csv(summary));
    echo_config(s, out_dir);

    std::cout << "median mse: method " << summary.method_median.mse << " vs baseline "
              << summary.baseline_median.mse << " (wins " << summary.wins_mse << "/" << summary.total
              << ")\n";
    return 0;
}

struct AblationCell {
    std::string name;
    augment::CropMode crop_mode;
    augment::AppearanceMode appearance;
    double w1;
    double w2;
};

int cmd_bench(const Settings& s, const fs::path& corpus_dir, const fs::path& bank_dir,
              const fs::path& heldout_dir, const fs::path& out_dir, const std::string& cells_flag) {
    const auto corpus = load_corpus(corpus_dir);
    const auto bank = load_bank(bank_dir);
    const auto heldout = load_bank(heldout_dir);

    const std::vector<AblationCell> all_cells = {
        {"full", augment::CropMode::multi_crop, augment::AppearanceMode::lut, s.loss.w1, s.loss.w2},
        {"single_crop", augment::CropMode::single_crop, augment::AppearanceMode::lut, s.loss.w1, s.loss.w2},
        {"color_transfer", augment::CropMode::multi_crop, augment::AppearanceMode::color_transfer,
         s.loss.w1, s.loss.w2},
        {"saturation", augment::CropMode::multi_crop, augment::AppearanceMode::saturation, s.loss.w1,
         s.loss.w2},
        {"no_recon", augment::CropMode::multi_crop, augment::AppearanceMode::lut, 0.0, s.loss.w2},
        {"no_dis", augment::CropMode::multi_crop, augment::AppearanceMode::lut, s.loss.w1, 0.0},
    };

    std::vector<AblationCell> cells;
    if (cells_flag == "all" || cells_flag.empty()) {
        cells = all_cells;
    } else {
        std::string rest = cells_flag;
        while (!rest.empty()) {
            const std::size_t comma = rest.find(',');
            const std::string name = rest.substr(0, comma);
            rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
            const auto it = std::find_if(all_cells.begin(), all_cells.end(),
                                         [&](const AblationCell& c) { return c.name == name; });
            if (it == all_cells.end()) throw std::invalid_argument("unknown ablation cell '" + name + "'");
            cells.push_back(*it);
        }
    }

    const auto style = pipeline::mask_style_from_string(s.mask_style);
    const auto cases = pipeline::synth_benchmark(corpus, heldout, s.bench_count, s.bench_seed, style);
    const pipeline::HarmonizeOptions opts{s.locality, s.expand};

    fs::create_directories(out_dir);
    std::string table_csv = "cell,median_mse,median_psnr,median_ssim,baseline_median_mse,wins_mse,total\n";
    for (const auto& cell : cells) {
        Settings cs = s;
        cs.aug.crop_mode = cell.crop_mode;
        cs.aug.appearance = cell.appearance;
        cs.loss.w1 = cell.w1;
        cs.loss.w2 = cell.w2;

        const auto result = model::train(corpus, bank, cs.train, cs.aug, cs.loss);
        const auto summary = pipeline::run_benchmark(result.model, cases, opts, s.workers);

        const fs::path cell_dir = out_dir / cell.name;
        fs::create_directories(cell_dir);
        write_text(cell_dir / "checkpoint.json", model::save_checkpoint(result.model, cs.train));
        write_text(cell_dir / "history.csv", model::history_csv(result.history));
        write_text(cell_dir / "report.json", pipeline::summary_json(summary));
        write_text(cell_dir / "report.csv", pipeline::summary_csv(summary));
        echo_config(cs, cell_dir);

        char row[256];
        std::snprintf(row, sizeof row, "%s,%.6f,%.6f,%.6f,%.6f,%d,%d\n", cell.name.c_str(),
                      summary.method_median.mse, summary.method_median.psnr, summary.method_median.ssim,
                      summary.baseline_median.mse, summary.wins_mse, summary.total);
        table_csv += row;
        std::cout << "cell " << cell.name << ": median mse " << summary.method_median.mse
                  << " (baseline " << summary.baseline_median.mse << ")\n";
    }
    write_text(out_dir / "ablation.csv", table_csv);
    echo_config(s, out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmon: self-supervised image harmonization toolkit"};
    app.require_subcommand(1);

    Settings settings;
    std::string config_path;

    auto* lut_cmd = app.add_subcommand("lut", "3D LUT utilities");
    lut_cmd->require_subcommand(1);
    std::string lut_file, lut_in, lut_out, lut_canonical;
    auto* lv = lut_cmd->add_subcommand("validate", "parse and validate a .cube file");
    lv->add_option("file", lut_file, ".cube file")->required();
    lv->add_option("-o,--canonical", lut_canonical, "write canonicalized .cube here");
    auto* la = lut_cmd->add_subcommand("apply", "apply a .cube to an image");
    la->add_option("--lut", lut_file, ".cube file")->required();
    la->add_option("input", lut_in, "input image")->required();
    la->add_option("output", lut_out, "output image")->required();
    int lut_count = 16, lut_size = 17;
    uint64_t lut_seed = 0;
    double lut_strength = 0.5;
    std::string lut_gen_dir;
    auto* lg = lut_cmd->add_subcommand("gen", "generate a synthetic LUT bank");
    lg->add_option("-o,--out", lut_gen_dir, "output directory")->required();
    lg->add_option("--count", lut_count, "number of LUTs");
    lg->add_option("--seed", lut_seed, "bank seed");
    lg->add_option("--strength", lut_strength, "perturbation strength in [0,1]");
    lg->add_option("--size", lut_size, "lattice size N");

    auto* aug_cmd = app.add_subcommand("augment", "pseudo-triplet dataset generation");
    aug_cmd->require_subcommand(1);
    std::string corpus_dir, bank_dir, out_dir;
    int gen_count = 16;
    uint64_t gen_seed = 0;
    auto* gt = aug_cmd->add_subcommand("gen-triplets", "generate a triplet dataset");
    gt->add_option("--corpus", corpus_dir, "directory of images")->required();
    gt->add_option("--bank", bank_dir, "directory of .cube files");
    gt->add_option("-o,--out", out_dir, "output directory")->required();
    gt->add_option("--count", gen_count, "number of triplets");
    gt->add_option("--seed", gen_seed, "dataset master seed");
    bind_config_flag(gt, config_path);
    bind_augment_flags(gt, settings);
    bind_workers_flag(gt, settings);

    std::string train_corpus, train_bank, train_out;
    auto* tr = app.add_subcommand("train", "train a harmonizer");
    tr->add_option("--corpus", train_corpus, "directory of images")->required();
    tr->add_option("--bank", train_bank, "directory of .cube files");
    tr->add_option("-o,--out", train_out, "output directory")->required();
    bind_config_flag(tr, config_path);
    bind_augment_flags(tr, settings);
    bind_train_flags(tr, settings);

    std::string hz_model, hz_fg, hz_bg, hz_mask, hz_out, hz_placement;
    bool hz_highres = false;
    auto* hz = app.add_subcommand("harmonize", "harmonize one fg/bg/mask triple");
    hz->add_option("--model", hz_model, "checkpoint JSON")->required();
    hz->add_option("--fg", hz_fg, "foreground image")->required();
    hz->add_option("--bg", hz_bg, "background image")->required();
    hz->add_option("--mask", hz_mask, "mask image")->required();
    hz->add_option("--placement", hz_placement, "x,y,w,h in the background (default: centered)");
    hz->add_flag("--highres", hz_highres, "low-res harmonize + polynomial color map at full res");
    hz->add_option("-o,--out", hz_out, "output image")->required();
    bind_config_flag(hz, config_path);
    bind_locality_flags(hz, settings);

    std::string ev_model, ev_corpus, ev_heldout, ev_out;
    auto* ev = app.add_subcommand("evaluate", "synthesize a held-out-LUT benchmark and score a model");
    ev->add_option("--model", ev_model, "checkpoint JSON")->required();
    ev->add_option("--corpus", ev_corpus, "directory of images")->required();
    ev->add_option("--heldout-bank", ev_heldout, "directory of held-out .cube files")->required();
    ev->add_option("-o,--out", ev_out, "output directory")->required();
    bind_config_flag(ev, config_path);
    bind_bench_flags(ev, settings);
    bind_workers_flag(ev, settings);

    std::string be_corpus, be_bank, be_heldout, be_out, be_cells = "all";
    auto* be = app.add_subcommand("bench", "train and score the ablation matrix");
    be->add_option("--corpus", be_corpus, "directory of images")->required();
    be->add_option("--bank", be_bank, "directory of training .cube files")->required();
    be->add_option("--heldout-bank", be_heldout, "directory of held-out .cube files")->required();
    be->add_option("-o,--out", be_out, "output directory")->required();
    be->add_option("--cells", be_cells,
                   "comma list of full,single_crop,color_transfer,saturation,no_recon,no_dis (or all)");
    bind_config_flag(be, config_path);
    bind_augment_flags(be, settings);
    bind_train_flags(be, settings);
    bind_bench_flags(be, settings);
    bind_workers_flag(be, settings);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        // config file fills in whatever flags did not set; re-parsing the
        // command line afterwards lets explicit flags win
        if (!config_path.empty()) {
            Settings from_file;
            settings_from_toml(from_file, toml::parse(read_text(config_path)));
            settings = from_file;
            std::vector<std::string> args(argv + 1, argv + argc);
            std::reverse(args.begin(), args.end());
            app.clear();
            app.parse(args);
        }

        if (lv->parsed()) return cmd_lut_validate(lut_file, lut_canonical);
        if (la->parsed()) return cmd_lut_apply(lut_file, lut_in, lut_out);
        if (lg->parsed()) return cmd_lut_gen(lut_gen_dir, lut_count, lut_seed, lut_strength, lut_size);
        if (gt->parsed()) return cmd_gen_triplets(settings, corpus_dir, bank_dir, out_dir, gen_count, gen_seed);
        if (tr->parsed()) return cmd_train(settings, train_corpus, train_bank, train_out);
        if (hz->parsed())
            return cmd_harmonize(settings, hz_model, hz_fg, hz_bg, hz_mask, hz_placement, hz_highres, hz_out);
        if (ev->parsed()) return cmd_evaluate(settings, ev_model, ev_corpus, ev_heldout, ev_out);
        if (be->parsed()) return cmd_bench(settings, be_corpus, be_bank, be_heldout, be_out, be_cells);
        std::cerr << "no command given\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
