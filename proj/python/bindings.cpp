#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "harmon/augment.hpp"
#include "harmon/codec.hpp"
#include "harmon/harmonizer.hpp"
#include "harmon/lut.hpp"
#include "harmon/metrics.hpp"
#include "harmon/pipeline.hpp"

namespace py = pybind11;
using namespace harmon;

namespace {

Image image_from_array(const py::array_t<float, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 3 || arr.shape(2) != 3)
        throw std::invalid_argument("image array must have shape (H, W, 3)");
    Image img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
    std::copy(arr.data(), arr.data() + arr.size(), img.data.begin());
    return img;
}

py::array_t<float> array_from_image(const Image& img) {
    py::array_t<float> arr({img.height, img.width, 3});
    std::copy(img.data.begin(), img.data.end(), arr.mutable_data());
    return arr;
}

Mask mask_from_array(const py::array_t<float, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("mask array must have shape (H, W)");
    Mask m(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
    std::copy(arr.data(), arr.data() + arr.size(), m.data.begin());
    return m;
}

py::array_t<float> array_from_mask(const Mask& m) {
    py::array_t<float> arr({m.height, m.width});
    std::copy(m.data.begin(), m.data.end(), arr.mutable_data());
    return arr;
}

Rect rect_from_tuple(const std::tuple<int, int, int, int>& t) {
    return Rect{std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t)};
}

py::dict triplet_to_dict(const augment::TripletSample& t) {
    py::dict d;
    d["content_a"] = array_from_image(t.content_a);
    d["content_b"] = array_from_image(t.content_b);
    d["ref_a"] = array_from_image(t.ref_a);
    d["ref_b"] = array_from_image(t.ref_b);
    d["content_rect"] = std::make_tuple(t.provenance.content_rect.x, t.provenance.content_rect.y,
                                        t.provenance.content_rect.w, t.provenance.content_rect.h);
    d["ref_rect"] = std::make_tuple(t.provenance.ref_rect.x, t.provenance.ref_rect.y,
                                    t.provenance.ref_rect.w, t.provenance.ref_rect.h);
    return d;
}

augment::TripletSample triplet_from_arrays(const py::array_t<float>& ca, const py::array_t<float>& cb,
                                           const py::array_t<float>& ra, const py::array_t<float>& rb) {
    augment::TripletSample t;
    t.content_a = image_from_array(ca);
    t.content_b = image_from_array(cb);
    t.ref_a = image_from_array(ra);
    t.ref_b = image_from_array(rb);
    return t;
}

py::dict report_to_dict(const model::LossReport& r) {
    py::dict d;
    d["l_harm"] = r.l_harm;
    d["l_recon"] = r.l_recon;
    d["l_dis"] = r.l_dis;
    d["l_dis_content"] = r.l_dis_content;
    d["total"] = r.total;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Self-supervised image harmonization: LUT-driven augmentation, a small "
              "trainable harmonizer, and full-reference metrics.";

    // ---------------------------------------------------------------- image
    m.def("load_image", [](const std::filesystem::path& p) { return array_from_image(load_image(p)); },
          py::arg("path"), "Load a PNG/PPM image as a float32 (H, W, 3) array in [0, 1].");
    m.def("save_image",
          [](const py::array_t<float>& arr, const std::filesystem::path& p) {
              save_image(image_from_array(arr), p);
          },
          py::arg("image"), py::arg("path"));
    m.def("load_mask", [](const std::filesystem::path& p) { return array_from_mask(load_mask(p)); },
          py::arg("path"));
    m.def("save_mask",
          [](const py::array_t<float>& arr, const std::filesystem::path& p) {
              save_mask(mask_from_array(arr), p);
          },
          py::arg("mask"), py::arg("path"));
    m.def("resize_bilinear",
          [](const py::array_t<float>& arr, int w, int h) {
              return array_from_image(resize_bilinear(image_from_array(arr), w, h));
          },
          py::arg("image"), py::arg("width"), py::arg("height"));
    m.def("composite",
          [](const py::array_t<float>& fg, const py::array_t<float>& bg, const py::array_t<float>& mask,
             const std::tuple<int, int, int, int>& placement) {
              return array_from_image(composite(image_from_array(fg), image_from_array(bg),
                                                mask_from_array(mask), rect_from_tuple(placement)));
          },
          py::arg("fg"), py::arg("bg"), py::arg("mask"), py::arg("placement"));

    // ---------------------------------------------------------------- lut
    py::class_<lut::Lut3d>(m, "Lut3d")
        .def_readonly("size", &lut::Lut3d::size)
        .def_readonly("title", &lut::Lut3d::title)
        .def_property_readonly("table",
                               [](const lut::Lut3d& l) {
                                   py::array_t<float> arr(
                                       {static_cast<py::ssize_t>(l.table.size() / 3), py::ssize_t(3)});
                                   std::copy(l.table.begin(), l.table.end(), arr.mutable_data());
                                   return arr;
                               })
        .def("apply",
             [](const lut::Lut3d& l, float r, float g, float b) {
                 const auto out = lut::apply_lut(l, {r, g, b});
                 return std::make_tuple(out[0], out[1], out[2]);
             },
             py::arg("r"), py::arg("g"), py::arg("b"))
        .def("apply_image",
             [](const lut::Lut3d& l, const py::array_t<float>& arr) {
                 return array_from_image(lut::apply_lut_image(l, image_from_array(arr)));
             },
             py::arg("image"));
    m.def("parse_cube", &lut::parse_cube, py::arg("text"));
    m.def("write_cube", &lut::write_cube, py::arg("lut"));
    m.def("identity_lut", &lut::identity_lut, py::arg("n"));
    m.def("random_smooth_lut", &lut::random_smooth_lut, py::arg("seed"), py::arg("strength"),
          py::arg("n") = 17);

    // ---------------------------------------------------------------- augment
    py::class_<augment::AugmentConfig>(m, "AugmentConfig")
        .def(py::init<>())
        .def_readwrite("jitter_min", &augment::AugmentConfig::jitter_min)
        .def_readwrite("jitter_max", &augment::AugmentConfig::jitter_max)
        .def_readwrite("crop_size", &augment::AugmentConfig::crop_size)
        .def_readwrite("overlap_min", &augment::AugmentConfig::overlap_min)
        .def_readwrite("overlap_max", &augment::AugmentConfig::overlap_max)
        .def_readwrite("min_offset", &augment::AugmentConfig::min_offset)
        .def_property(
            "crop_mode",
            [](const augment::AugmentConfig& c) { return std::string(augment::to_string(c.crop_mode)); },
            [](augment::AugmentConfig& c, const std::string& s) {
                c.crop_mode = augment::crop_mode_from_string(s);
            })
        .def_property(
            "appearance",
            [](const augment::AugmentConfig& c) { return std::string(augment::to_string(c.appearance)); },
            [](augment::AugmentConfig& c, const std::string& s) {
                c.appearance = augment::appearance_mode_from_string(s);
            });

    m.def("sample_crop_pair",
          [](const py::array_t<float>& img, uint64_t seed, const augment::AugmentConfig& cfg) {
              const auto pair = augment::sample_crop_pair(image_from_array(img), seed, cfg);
              py::dict d;
              d["content_rect"] = std::make_tuple(pair.content.x, pair.content.y, pair.content.w, pair.content.h);
              d["ref_rect"] = std::make_tuple(pair.reference.x, pair.reference.y, pair.reference.w, pair.reference.h);
              d["resized"] = array_from_image(pair.resized);
              return d;
          },
          py::arg("image"), py::arg("seed"), py::arg("config") = augment::AugmentConfig{});
    m.def("gen_triplet",
          [](const py::array_t<float>& img, const lut::Lut3d& a, const lut::Lut3d& b, uint64_t seed,
             const augment::AugmentConfig& cfg) {
              return triplet_to_dict(augment::gen_triplet(image_from_array(img), a, b, seed, cfg));
          },
          py::arg("image"), py::arg("lut_a"), py::arg("lut_b"), py::arg("seed"),
          py::arg("config") = augment::AugmentConfig{});
    m.def("color_transfer_meanstd",
          [](const py::array_t<float>& img, const std::array<double, 3>& mean,
             const std::array<double, 3>& stddev) {
              return array_from_image(augment::color_transfer_meanstd(image_from_array(img), mean, stddev));
          },
          py::arg("image"), py::arg("target_mean"), py::arg("target_std"));
    m.def("saturation_jitter",
          [](const py::array_t<float>& img, double factor) {
              return array_from_image(augment::saturation_jitter(image_from_array(img), factor));
          },
          py::arg("image"), py::arg("factor"));

    // ---------------------------------------------------------------- model
    m.def("extract_features",
          [](const py::array_t<float>& img) {
              const auto f = model::extract_features(image_from_array(img));
              py::array_t<double> arr(static_cast<py::ssize_t>(f.v.size()));
              std::copy(f.v.begin(), f.v.end(), arr.mutable_data());
              return arr;
          },
          py::arg("image"));

    py::class_<model::HarmonizerModel>(m, "Harmonizer")
        .def_static("init", &model::HarmonizerModel::init, py::arg("seed"))
        .def_property_readonly("param_count", &model::HarmonizerModel::param_count)
        .def("harmonize",
             [](const model::HarmonizerModel& hm, const py::array_t<float>& content,
                const py::array_t<float>& reference, bool clamp) {
                 return array_from_image(
                     model::harmonize(hm, image_from_array(content), image_from_array(reference), clamp));
             },
             py::arg("content"), py::arg("reference"), py::arg("clamp") = true)
        .def("loss",
             [](const model::HarmonizerModel& hm, const py::array_t<float>& ca, const py::array_t<float>& cb,
                const py::array_t<float>& ra, const py::array_t<float>& rb, double w1, double w2) {
                 return report_to_dict(
                     model::loss_total(hm, triplet_from_arrays(ca, cb, ra, rb), model::LossWeights{w1, w2}));
             },
             py::arg("content_a"), py::arg("content_b"), py::arg("ref_a"), py::arg("ref_b"),
             py::arg("w1") = 0.4, py::arg("w2") = 0.05)
        .def("to_json", [](const model::HarmonizerModel& hm) {
            return model::save_checkpoint(hm, model::TrainConfig{});
        })
        .def_static("from_json", [](const std::string& text) { return model::load_checkpoint(text); });

    // ---------------------------------------------------------------- metrics
    m.def("mse",
          [](const py::array_t<float>& a, const py::array_t<float>& b) {
              return metrics::mse(image_from_array(a), image_from_array(b));
          },
          py::arg("a"), py::arg("b"));
    m.def("psnr",
          [](const py::array_t<float>& a, const py::array_t<float>& b) {
              return metrics::psnr(image_from_array(a), image_from_array(b));
          },
          py::arg("a"), py::arg("b"));
    m.def("ssim",
          [](const py::array_t<float>& a, const py::array_t<float>& b) {
              return metrics::ssim(image_from_array(a), image_from_array(b));
          },
          py::arg("a"), py::arg("b"));

    // ---------------------------------------------------------------- pipeline
    m.def("locality_crop",
          [](const py::array_t<float>& bg, const std::tuple<int, int, int, int>& placement, double expand) {
              return array_from_image(
                  pipeline::locality_crop(image_from_array(bg), rect_from_tuple(placement), expand));
          },
          py::arg("bg"), py::arg("placement"), py::arg("expand") = 2.0);
    m.def("harmonize_composite",
          [](const model::HarmonizerModel& hm, const py::array_t<float>& fg, const py::array_t<float>& bg,
             const py::array_t<float>& mask, const std::tuple<int, int, int, int>& placement, bool locality,
             double expand) {
              return array_from_image(pipeline::harmonize_composite(
                  hm, image_from_array(fg), image_from_array(bg), mask_from_array(mask),
                  rect_from_tuple(placement), pipeline::HarmonizeOptions{locality, expand}));
          },
          py::arg("model"), py::arg("fg"), py::arg("bg"), py::arg("mask"), py::arg("placement"),
          py::arg("locality") = true, py::arg("expand") = 2.0);

    py::class_<pipeline::PolyColorMap>(m, "PolyColorMap");
    m.def("fit_color_map",
          [](const py::array_t<float>& lo_in, const py::array_t<float>& lo_out) {
              return pipeline::fit_color_map(image_from_array(lo_in), image_from_array(lo_out));
          },
          py::arg("lowres_in"), py::arg("lowres_out"));
    m.def("apply_color_map",
          [](const pipeline::PolyColorMap& map, const py::array_t<float>& img) {
              return array_from_image(pipeline::apply_color_map(map, image_from_array(img)));
          },
          py::arg("map"), py::arg("image"));

    // ---------------------------------------------------------------- train
    m.def("train",
          [](const std::vector<py::array_t<float>>& images, const std::vector<lut::Lut3d>& luts,
             const augment::AugmentConfig& aug_cfg, double learning_rate, int epochs_const,
             int epochs_decay, int steps_per_epoch, int batch_size, uint64_t seed, double w1, double w2) {
              std::vector<augment::CorpusImage> corpus;
              for (std::size_t i = 0; i < images.size(); ++i)
                  corpus.push_back({"img" + std::to_string(i), image_from_array(images[i])});
              std::vector<augment::BankLut> bank;
              for (std::size_t i = 0; i < luts.size(); ++i)
                  bank.push_back({"lut" + std::to_string(i), luts[i]});
              model::TrainConfig cfg;
              cfg.learning_rate = learning_rate;
              cfg.epochs_const = epochs_const;
              cfg.epochs_decay = epochs_decay;
              cfg.steps_per_epoch = steps_per_epoch;
              cfg.batch_size = batch_size;
              cfg.seed = seed;
              const auto result = model::train(corpus, bank, cfg, aug_cfg, model::LossWeights{w1, w2});
              py::list history;
              for (const auto& st : result.history) {
                  py::dict d = report_to_dict(st.mean);
                  d["epoch"] = st.epoch;
                  d["lr"] = st.lr;
                  history.append(d);
              }
              return py::make_tuple(result.model, history);
          },
          py::arg("images"), py::arg("luts"), py::arg("config") = augment::AugmentConfig{},
          py::arg("learning_rate") = 2e-4, py::arg("epochs_const") = 70, py::arg("epochs_decay") = 30,
          py::arg("steps_per_epoch") = 0, py::arg("batch_size") = 64, py::arg("seed") = 0,
          py::arg("w1") = 0.4, py::arg("w2") = 0.05);
}
