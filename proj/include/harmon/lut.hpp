#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "harmon/image.hpp"

namespace harmon::lut {

// Lattice color transform: size^3 RGB entries, red index varying fastest
// (index = r + size*g + size^2*b), evaluated by trilinear interpolation.
struct Lut3d {
    int size = 0;
    std::array<float, 3> domain_min{0.0f, 0.0f, 0.0f};
    std::array<float, 3> domain_max{1.0f, 1.0f, 1.0f};
    std::vector<float> table;  // size^3 * 3
    std::string title;

    std::size_t entry_index(int r, int g, int b) const {
        return (static_cast<std::size_t>(b) * size * size + static_cast<std::size_t>(g) * size + r) * 3;
    }
    std::array<float, 3> entry(int r, int g, int b) const {
        const std::size_t i = entry_index(r, g, b);
        return {table[i], table[i + 1], table[i + 2]};
    }
    bool has_default_domain() const {
        return domain_min == std::array<float, 3>{0, 0, 0} && domain_max == std::array<float, 3>{1, 1, 1};
    }
};

// .cube text parser. Accepts LF or CRLF, '#' comments anywhere, optional
// TITLE and DOMAIN_MIN/DOMAIN_MAX. All diagnostics carry a line number.
Lut3d parse_cube(std::string_view text);

// Canonical form: TITLE if set, LUT_3D_SIZE, DOMAIN_* only if non-default,
// data with 6 fractional digits, LF endings.
std::string write_cube(const Lut3d& lut);

Lut3d identity_lut(int n);

// Inputs outside [domain_min, domain_max] clamp to the domain before lookup.
std::array<float, 3> apply_lut(const Lut3d& lut, const std::array<float, 3>& rgb);

// Per-pixel apply_lut with output clamped to [0,1].
Image apply_lut_image(const Lut3d& lut, const Image& img);

// Monotone piecewise-cubic (Fritsch-Carlson) through 4 knots.
struct MonotoneCurve {
    std::array<double, 4> xs{0, 1.0 / 3, 2.0 / 3, 1};
    std::array<double, 4> ys{0, 1.0 / 3, 2.0 / 3, 1};
    std::array<double, 4> slopes{1, 1, 1, 1};

    static MonotoneCurve through(const std::array<double, 4>& xs, const std::array<double, 4>& ys);
    double eval(double x) const;
};

// The two stages of a synthetic LUT: per-channel tone curves followed by a
// 3x3 color-mixing matrix within strength*0.3 of identity.
struct SmoothLutStages {
    std::array<MonotoneCurve, 3> tone;
    std::array<std::array<double, 3>, 3> mix;
};

SmoothLutStages smooth_lut_stages(uint64_t seed, double strength);

// Deterministic synthetic LUT: identity lattice composed with the stages
// above, entries clamped to [0,1]. strength 0 yields the identity exactly.
Lut3d random_smooth_lut(uint64_t seed, double strength, int n = 17);

}  // namespace harmon::lut
