#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "harmon/error.hpp"
#include "harmon/lut.hpp"
#include "harmon/rng.hpp"
#include "testutil.hpp"

using namespace harmon;
using lut::Lut3d;

namespace {

const char* kIdentity2 =
    "LUT_3D_SIZE 2\n"
    "0 0 0\n"
    "1 0 0\n"
    "0 1 0\n"
    "1 1 0\n"
    "0 0 1\n"
    "1 0 1\n"
    "0 1 1\n"
    "1 1 1\n";

// independent oracle: sequential lerps along r, then g, then b
std::array<double, 3> oracle_trilinear(const Lut3d& l, const std::array<float, 3>& rgb) {
    const int n = l.size;
    int i0[3];
    double f[3];
    for (int c = 0; c < 3; ++c) {
        const double lo = l.domain_min[c], hi = l.domain_max[c];
        double t = (rgb[c] - lo) / (hi - lo);
        t = std::clamp(t, 0.0, 1.0);
        const double u = t * (n - 1);
        i0[c] = std::min(static_cast<int>(u), n - 2);
        f[c] = u - i0[c];
    }
    const auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };
    std::array<double, 3> out;
    for (int c = 0; c < 3; ++c) {
        double plane[2];
        for (int db = 0; db < 2; ++db) {
            double row[2];
            for (int dg = 0; dg < 2; ++dg) {
                const double e0 = l.entry(i0[0], i0[1] + dg, i0[2] + db)[c];
                const double e1 = l.entry(i0[0] + 1, i0[1] + dg, i0[2] + db)[c];
                row[dg] = lerp(e0, e1, f[0]);
            }
            plane[db] = lerp(row[0], row[1], f[1]);
        }
        out[c] = lerp(plane[0], plane[1], f[2]);
    }
    return out;
}

Lut3d random_raw_lut(uint64_t seed, int n) {
    Rng rng(seed);
    Lut3d l;
    l.size = n;
    l.table.resize(static_cast<std::size_t>(n) * n * n * 3);
    for (auto& v : l.table) v = static_cast<float>(rng.next_double());
    return l;
}

float quantize6(float v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::strtof(buf, nullptr);
}

}  // namespace

TEST_SUITE("lut") {

TEST_CASE("parse identity N=2") {
    const Lut3d l = lut::parse_cube(kIdentity2);
    CHECK(l.size == 2);
    REQUIRE(l.table.size() == 24);
    const auto e = l.entry(1, 0, 0);
    CHECK(e[0] == 1.0f);
    CHECK(e[1] == 0.0f);
    CHECK(e[2] == 0.0f);
    CHECK(l.has_default_domain());
}

TEST_CASE("parse accepts comments, CRLF, title, domain") {
    std::string text =
        "# leading comment\r\n"
        "TITLE \"demo lut\"\r\n"
        "LUT_3D_SIZE 2\r\n"
        "DOMAIN_MIN 0 0 0\r\n"
        "DOMAIN_MAX 2 2 2\r\n";
    for (int i = 0; i < 8; ++i) text += "0.5 0.5 0.5\r\n";
    const Lut3d l = lut::parse_cube(text);
    CHECK(l.title == "demo lut");
    CHECK(l.domain_max[0] == 2.0f);
    CHECK(!l.has_default_domain());
}

TEST_CASE("parse 33^3 line count") {
    std::string text = "LUT_3D_SIZE 33\n";
    const int n = 33 * 33 * 33;
    for (int i = 0; i < n; ++i) text += "0 0 0\n";
    const Lut3d l = lut::parse_cube(text);
    CHECK(l.table.size() == static_cast<std::size_t>(n) * 3);
}

TEST_CASE("short data names the line past the end") {
    std::string text = "LUT_3D_SIZE 2\n";
    for (int i = 0; i < 7; ++i) text += "0 0 0\n";
    try {
        lut::parse_cube(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 9") != std::string::npos);
    }
}

TEST_CASE("malformed inputs reject with line numbers") {
    CHECK_THROWS_AS(lut::parse_cube("0 0 0\n"), ParseError);             // data before size
    CHECK_THROWS_AS(lut::parse_cube("LUT_3D_SIZE 1\n"), ParseError);     // N out of range
    CHECK_THROWS_AS(lut::parse_cube("LUT_3D_SIZE 257\n"), ParseError);   // N out of range
    CHECK_THROWS_AS(lut::parse_cube(""), ParseError);                    // missing size

    std::string dup = "LUT_3D_SIZE 2\nLUT_3D_SIZE 2\n";
    for (int i = 0; i < 8; ++i) dup += "0 0 0\n";
    CHECK_THROWS_AS(lut::parse_cube(dup), ParseError);

    std::string bad_token = "LUT_3D_SIZE 2\n0 0 zebra\n";
    try {
        lut::parse_cube(bad_token);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    std::string nonfinite = "LUT_3D_SIZE 2\n0 0 inf\n";
    CHECK_THROWS_AS(lut::parse_cube(nonfinite), ParseError);

    std::string extra = std::string(kIdentity2) + "0 0 0\n";
    try {
        lut::parse_cube(extra);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 10") != std::string::npos);
    }

    std::string bad_domain = "LUT_3D_SIZE 2\nDOMAIN_MIN 1 1 1\nDOMAIN_MAX 0 0 0\n";
    for (int i = 0; i < 8; ++i) bad_domain += "0 0 0\n";
    CHECK_THROWS_AS(lut::parse_cube(bad_domain), ParseError);

    std::string two_tokens = "LUT_3D_SIZE 2\n0 0\n";
    CHECK_THROWS_AS(lut::parse_cube(two_tokens), ParseError);
}

TEST_CASE("write identity N=2 canonical text") {
    const std::string text = lut::write_cube(lut::identity_lut(2));
    CHECK(text ==
          "LUT_3D_SIZE 2\n"
          "0.000000 0.000000 0.000000\n"
          "1.000000 0.000000 0.000000\n"
          "0.000000 1.000000 0.000000\n"
          "1.000000 1.000000 0.000000\n"
          "0.000000 0.000000 1.000000\n"
          "1.000000 0.000000 1.000000\n"
          "0.000000 1.000000 1.000000\n"
          "1.000000 1.000000 1.000000\n");
}

TEST_CASE("default domain emits no DOMAIN lines") {
    const std::string text = lut::write_cube(lut::identity_lut(3));
    CHECK(text.find("DOMAIN") == std::string::npos);

    Lut3d l = lut::identity_lut(2);
    l.domain_max = {2.0f, 2.0f, 2.0f};
    CHECK(lut::write_cube(l).find("DOMAIN_MAX 2.000000 2.000000 2.000000") != std::string::npos);
}

TEST_CASE("round-trip 100 generated LUTs") {
    Rng rng(404);
    for (int k = 0; k < 100; ++k) {
        const int n = static_cast<int>(rng.next_int(2, 9));
        Lut3d l = random_raw_lut(rng.next_u64(), n);
        if (k % 3 == 0) l.title = "lut " + std::to_string(k);
        if (k % 5 == 0) {
            l.domain_min = {-0.25f, 0.0f, 0.0f};
            l.domain_max = {1.0f, 1.0f, 1.5f};
        }
        const std::string text = lut::write_cube(l);
        const Lut3d back = lut::parse_cube(text);
        REQUIRE(back.size == l.size);
        CHECK(back.title == l.title);
        for (int c = 0; c < 3; ++c) {
            CHECK(back.domain_min[c] == quantize6(l.domain_min[c]));
            CHECK(back.domain_max[c] == quantize6(l.domain_max[c]));
        }
        REQUIRE(back.table.size() == l.table.size());
        for (std::size_t i = 0; i < l.table.size(); ++i) CHECK(back.table[i] == quantize6(l.table[i]));
        // fixed point after one canonicalization
        CHECK(lut::write_cube(back) == text);
    }
}

TEST_CASE("identity lattice entries") {
    const Lut3d l2 = lut::identity_lut(2);
    const auto e = l2.entry(1, 1, 1);
    CHECK(e[0] == 1.0f);
    CHECK(e[1] == 1.0f);
    CHECK(e[2] == 1.0f);

    const Lut3d l33 = lut::identity_lut(33);
    const auto m = l33.entry(16, 0, 0);
    CHECK(m[0] == 0.5f);
    CHECK(m[1] == 0.0f);

    CHECK_THROWS_AS(lut::identity_lut(1), std::invalid_argument);
    CHECK_THROWS_AS(lut::identity_lut(300), std::invalid_argument);
}

TEST_CASE("identity apply is exact") {
    const Lut3d l = lut::identity_lut(17);
    const auto out = lut::apply_lut(l, {0.3f, 0.7f, 0.1f});
    CHECK(std::abs(out[0] - 0.3f) <= 1e-6f);
    CHECK(std::abs(out[1] - 0.7f) <= 1e-6f);
    CHECK(std::abs(out[2] - 0.1f) <= 1e-6f);

    const Image img = testutil::random_image(31, 64, 48);
    const Image mapped = lut::apply_lut_image(l, img);
    CHECK(testutil::max_abs_diff(img, mapped) <= 1e-6);
}

TEST_CASE("constant LUT maps everything to the constant") {
    Lut3d l = lut::identity_lut(5);
    for (auto& v : l.table) v = 0.5f;
    for (float x : {0.0f, 0.2f, 0.9f, 1.0f}) {
        const auto out = lut::apply_lut(l, {x, 1.0f - x, x * x});
        for (int c = 0; c < 3; ++c) CHECK(out[c] == doctest::Approx(0.5).epsilon(1e-7));
    }
}

TEST_CASE("apply matches the brute-force oracle on 10000 pairs") {
    Rng rng(2024);
    const int sizes[4] = {2, 5, 9, 17};
    for (int k = 0; k < 100; ++k) {
        const Lut3d l = random_raw_lut(rng.next_u64(), sizes[k % 4]);
        for (int j = 0; j < 100; ++j) {
            const std::array<float, 3> rgb = {static_cast<float>(rng.next_in(-0.2, 1.2)),
                                              static_cast<float>(rng.next_double()),
                                              static_cast<float>(rng.next_double())};
            const auto got = lut::apply_lut(l, rgb);
            const auto want = oracle_trilinear(l, rgb);
            for (int c = 0; c < 3; ++c) CHECK(std::abs(got[c] - want[c]) <= 1e-6);
        }
    }
}

TEST_CASE("lattice colors return stored entries exactly") {
    const Lut3d l = random_raw_lut(77, 5);
    for (int b = 0; b < 5; ++b)
        for (int g = 0; g < 5; ++g)
            for (int r = 0; r < 5; ++r) {
                const std::array<float, 3> rgb = {r / 4.0f, g / 4.0f, b / 4.0f};
                const auto got = lut::apply_lut(l, rgb);
                const auto want = l.entry(r, g, b);
                for (int c = 0; c < 3; ++c) CHECK(got[c] == want[c]);
            }
}

TEST_CASE("out-of-domain inputs clamp") {
    const Lut3d l = lut::identity_lut(9);
    const auto lo = lut::apply_lut(l, {-2.0f, -1.0f, -0.5f});
    const auto hi = lut::apply_lut(l, {2.0f, 1.5f, 7.0f});
    for (int c = 0; c < 3; ++c) {
        CHECK(lo[c] == 0.0f);
        CHECK(hi[c] == 1.0f);
    }
}

TEST_CASE("apply is Lipschitz-continuous per axis") {
    Rng rng(515);
    for (int k = 0; k < 10; ++k) {
        const Lut3d l = lut::random_smooth_lut(rng.next_u64(), 0.7);
        double max_adj = 0.0;
        const int n = l.size;
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g)
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < 3; ++c) {
                        const auto e = l.entry(r, g, b);
                        if (r + 1 < n)
                            max_adj = std::max(max_adj, std::abs(double(l.entry(r + 1, g, b)[c]) - e[c]));
                        if (g + 1 < n)
                            max_adj = std::max(max_adj, std::abs(double(l.entry(r, g + 1, b)[c]) - e[c]));
                        if (b + 1 < n)
                            max_adj = std::max(max_adj, std::abs(double(l.entry(r, g, b + 1)[c]) - e[c]));
                    }
        const double lipschitz = (n - 1) * max_adj;
        const double eps = 1e-3;
        for (int j = 0; j < 100; ++j) {
            std::array<float, 3> a = {static_cast<float>(rng.next_in(0, 1 - eps)),
                                      static_cast<float>(rng.next_in(0, 1 - eps)),
                                      static_cast<float>(rng.next_in(0, 1 - eps))};
            const int axis = static_cast<int>(rng.next_int(0, 2));
            std::array<float, 3> b = a;
            b[axis] += static_cast<float>(eps);
            const auto ya = lut::apply_lut(l, a);
            const auto yb = lut::apply_lut(l, b);
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(ya[c] - yb[c]) <= lipschitz * eps + 1e-6);
        }
    }
}

TEST_CASE("random smooth lut: strength 0 is the identity") {
    for (uint64_t seed : {0ull, 7ull, 123456789ull}) {
        const Lut3d l = lut::random_smooth_lut(seed, 0.0);
        const Lut3d id = lut::identity_lut(17);
        CHECK(l.table == id.table);
    }
}

TEST_CASE("random smooth lut: deterministic in seed") {
    const Lut3d a = lut::random_smooth_lut(42, 0.5);
    const Lut3d b = lut::random_smooth_lut(42, 0.5);
    CHECK(a.table == b.table);
    const Lut3d c = lut::random_smooth_lut(43, 0.5);
    CHECK(a.table != c.table);
}

TEST_CASE("random smooth lut: 100 seeds stay in range with monotone tone stage") {
    for (uint64_t seed = 0; seed < 100; ++seed) {
        const Lut3d l = lut::random_smooth_lut(seed, 0.5);
        for (float v : l.table) {
            CHECK(v >= 0.0f);
            CHECK(v <= 1.0f);
        }
        const auto stages = lut::smooth_lut_stages(seed, 0.5);
        for (int c = 0; c < 3; ++c) {
            double prev = stages.tone[c].eval(0.0);
            for (int i = 1; i <= 64; ++i) {
                const double cur = stages.tone[c].eval(i / 64.0);
                CHECK(cur >= prev - 1e-12);
                prev = cur;
            }
        }
        // mixing matrix within strength*0.3 of identity
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(stages.mix[i][j] - (i == j ? 1.0 : 0.0)) <= 0.5 * 0.3 + 1e-12);
    }
}

}  // TEST_SUITE
