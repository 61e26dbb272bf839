#include "harmon/lut.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "harmon/error.hpp"
#include "harmon/rng.hpp"

namespace harmon::lut {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("cube: line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> split_tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

float parse_float_token(std::string_view tok, std::size_t line) {
    float v = 0.0f;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        fail(line, "non-numeric token '" + std::string(tok) + "'");
    if (!std::isfinite(v)) fail(line, "non-finite value '" + std::string(tok) + "'");
    return v;
}

int parse_int_token(std::string_view tok, std::size_t line) {
    int v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        fail(line, "non-numeric token '" + std::string(tok) + "'");
    return v;
}

}  // namespace

Lut3d parse_cube(std::string_view text) {
    Lut3d out;
    bool have_size = false;
    bool in_data = false;
    std::size_t expected = 0;
    std::size_t count = 0;
    std::size_t domain_line = 0;  // later of the two DOMAIN_* directives

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        pos = (eol == std::string_view::npos) ? text.size() : eol + 1;

        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;  // blank
        if (line[first] == '#') continue;               // comment

        const auto tokens = split_tokens(line);
        const std::string_view head = tokens[0];

        if (head == "TITLE") {
            if (in_data) fail(line_no, "TITLE after data lines");
            const std::size_t q0 = line.find('"');
            const std::size_t q1 = line.rfind('"');
            if (q0 == std::string_view::npos || q1 <= q0) fail(line_no, "TITLE requires a quoted string");
            out.title = std::string(line.substr(q0 + 1, q1 - q0 - 1));
            continue;
        }
        if (head == "LUT_3D_SIZE") {
            if (in_data) fail(line_no, "LUT_3D_SIZE after data lines");
            if (have_size) fail(line_no, "duplicate LUT_3D_SIZE");
            if (tokens.size() != 2) fail(line_no, "LUT_3D_SIZE requires one integer");
            const int n = parse_int_token(tokens[1], line_no);
            if (n < 2 || n > 256) fail(line_no, "LUT_3D_SIZE " + std::to_string(n) + " outside [2, 256]");
            out.size = n;
            expected = static_cast<std::size_t>(n) * n * n;
            out.table.reserve(expected * 3);
            have_size = true;
            continue;
        }
        if (head == "DOMAIN_MIN" || head == "DOMAIN_MAX") {
            if (in_data) fail(line_no, std::string(head) + " after data lines");
            if (tokens.size() != 4) fail(line_no, std::string(head) + " requires three values");
            auto& dst = (head == "DOMAIN_MIN") ? out.domain_min : out.domain_max;
            for (int c = 0; c < 3; ++c) dst[c] = parse_float_token(tokens[c + 1], line_no);
            domain_line = line_no;
            continue;
        }
        if (head == "LUT_1D_SIZE" || head == "LUT_3D_INPUT_RANGE")
            fail(line_no, "unsupported directive " + std::string(head));

        // data line
        if (!have_size) fail(line_no, "data before LUT_3D_SIZE (or LUT_3D_SIZE missing)");
        if (count >= expected)
            fail(line_no, "too many data lines (expected " + std::to_string(expected) + ")");
        if (tokens.size() != 3) fail(line_no, "expected three values per data line, got " + std::to_string(tokens.size()));
        in_data = true;
        for (int c = 0; c < 3; ++c) out.table.push_back(parse_float_token(tokens[c], line_no));
        ++count;
    }

    if (!have_size) fail(std::max<std::size_t>(line_no, 1), "LUT_3D_SIZE missing");
    if (count != expected)
        fail(line_no + 1, "expected " + std::to_string(expected) + " data lines, found " + std::to_string(count));
    for (int c = 0; c < 3; ++c) {
        if (!(out.domain_min[c] < out.domain_max[c]))
            fail(domain_line ? domain_line : 1, "domain_min must be < domain_max per channel");
    }
    return out;
}

std::string write_cube(const Lut3d& lut) {
    std::string out;
    out.reserve(lut.table.size() * 10 + 64);
    char buf[96];
    if (!lut.title.empty()) {
        out += "TITLE \"" + lut.title + "\"\n";
    }
    out += "LUT_3D_SIZE " + std::to_string(lut.size) + "\n";
    if (!lut.has_default_domain()) {
        std::snprintf(buf, sizeof buf, "DOMAIN_MIN %.6f %.6f %.6f\n", lut.domain_min[0], lut.domain_min[1], lut.domain_min[2]);
        out += buf;
        std::snprintf(buf, sizeof buf, "DOMAIN_MAX %.6f %.6f %.6f\n", lut.domain_max[0], lut.domain_max[1], lut.domain_max[2]);
        out += buf;
    }
    for (std::size_t i = 0; i < lut.table.size(); i += 3) {
        std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f\n", lut.table[i], lut.table[i + 1], lut.table[i + 2]);
        out += buf;
    }
    return out;
}

Lut3d identity_lut(int n) {
    if (n < 2 || n > 256) throw std::invalid_argument("identity_lut: size outside [2, 256]");
    Lut3d out;
    out.size = n;
    out.table.resize(static_cast<std::size_t>(n) * n * n * 3);
    const double step = 1.0 / (n - 1);
    std::size_t i = 0;
    for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g)
            for (int r = 0; r < n; ++r) {
                out.table[i++] = static_cast<float>(r * step);
                out.table[i++] = static_cast<float>(g * step);
                out.table[i++] = static_cast<float>(b * step);
            }
    return out;
}

std::array<float, 3> apply_lut(const Lut3d& lut, const std::array<float, 3>& rgb) {
    const int n = lut.size;
    double u[3];
    int i0[3];
    double f[3];
    for (int c = 0; c < 3; ++c) {
        const double lo = lut.domain_min[c];
        const double hi = lut.domain_max[c];
        const double t = std::clamp((rgb[c] - lo) / (hi - lo), 0.0, 1.0);
        u[c] = t * (n - 1);
        i0[c] = std::min(static_cast<int>(u[c]), n - 2);
        f[c] = u[c] - i0[c];
    }
    double acc[3] = {0.0, 0.0, 0.0};
    for (int corner = 0; corner < 8; ++corner) {
        const int dr = corner & 1, dg = (corner >> 1) & 1, db = (corner >> 2) & 1;
        const double w = (dr ? f[0] : 1.0 - f[0]) * (dg ? f[1] : 1.0 - f[1]) * (db ? f[2] : 1.0 - f[2]);
        if (w == 0.0) continue;
        const std::size_t e = lut.entry_index(i0[0] + dr, i0[1] + dg, i0[2] + db);
        acc[0] += w * lut.table[e];
        acc[1] += w * lut.table[e + 1];
        acc[2] += w * lut.table[e + 2];
    }
    return {static_cast<float>(acc[0]), static_cast<float>(acc[1]), static_cast<float>(acc[2])};
}

Image apply_lut_image(const Lut3d& lut, const Image& img) {
    Image out(img.width, img.height);
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        const auto mapped = apply_lut(lut, {img.data[p * 3], img.data[p * 3 + 1], img.data[p * 3 + 2]});
        for (int c = 0; c < 3; ++c) out.data[p * 3 + c] = std::clamp(mapped[c], 0.0f, 1.0f);
    }
    return out;
}

MonotoneCurve MonotoneCurve::through(const std::array<double, 4>& xs, const std::array<double, 4>& ys) {
    MonotoneCurve c;
    c.xs = xs;
    c.ys = ys;
    double d[3];
    for (int i = 0; i < 3; ++i) d[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    auto& m = c.slopes;
    m[0] = d[0];
    m[1] = (d[0] + d[1]) / 2.0;
    m[2] = (d[1] + d[2]) / 2.0;
    m[3] = d[2];
    // Fritsch-Carlson limiting keeps each interval monotone
    for (int i = 0; i < 3; ++i) {
        if (d[i] == 0.0) {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        const double a = m[i] / d[i];
        const double b = m[i + 1] / d[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            m[i] = tau * a * d[i];
            m[i + 1] = tau * b * d[i];
        }
    }
    return c;
}

double MonotoneCurve::eval(double x) const {
    x = std::clamp(x, xs[0], xs[3]);
    int i = 0;
    while (i < 2 && x > xs[i + 1]) ++i;
    const double h = xs[i + 1] - xs[i];
    const double t = (x - xs[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * ys[i] + h * h10 * slopes[i] + h01 * ys[i + 1] + h * h11 * slopes[i + 1];
}

SmoothLutStages smooth_lut_stages(uint64_t seed, double strength) {
    if (strength < 0.0 || strength > 1.0) throw std::invalid_argument("smooth_lut_stages: strength outside [0, 1]");
    Rng rng(seed);
    SmoothLutStages st;
    for (int c = 0; c < 3; ++c) {
        const double x1 = rng.next_in(0.20, 0.45);
        const double x2 = rng.next_in(0.55, 0.80);
        const double y0 = strength * rng.next_in(0.0, 0.12);
        const double y3 = 1.0 - strength * rng.next_in(0.0, 0.12);
        double t1 = x1 + strength * rng.next_in(-0.18, 0.18);
        double t2 = x2 + strength * rng.next_in(-0.18, 0.18);
        t1 = std::clamp(t1, 0.05, 0.90);
        t2 = std::clamp(t2, t1 + 0.05, 0.95);
        const double y1 = y0 + (y3 - y0) * t1;
        const double y2 = y0 + (y3 - y0) * t2;
        st.tone[c] = MonotoneCurve::through({0.0, x1, x2, 1.0}, {y0, y1, y2, y3});
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            st.mix[i][j] = (i == j ? 1.0 : 0.0) + strength * 0.3 * rng.next_in(-1.0, 1.0);
    return st;
}

Lut3d random_smooth_lut(uint64_t seed, double strength, int n) {
    if (n < 2 || n > 256) throw std::invalid_argument("random_smooth_lut: size outside [2, 256]");
    if (strength == 0.0) return identity_lut(n);
    const SmoothLutStages st = smooth_lut_stages(seed, strength);

    Lut3d out;
    out.size = n;
    out.table.resize(static_cast<std::size_t>(n) * n * n * 3);
    const double step = 1.0 / (n - 1);
    std::size_t i = 0;
    for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g)
            for (int r = 0; r < n; ++r) {
                const double toned[3] = {st.tone[0].eval(r * step), st.tone[1].eval(g * step),
                                         st.tone[2].eval(b * step)};
                for (int c = 0; c < 3; ++c) {
                    const double v = st.mix[c][0] * toned[0] + st.mix[c][1] * toned[1] + st.mix[c][2] * toned[2];
                    out.table[i++] = static_cast<float>(std::clamp(v, 0.0, 1.0));
                }
            }
    return out;
}

}  // namespace harmon::lut
