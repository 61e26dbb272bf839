#include <doctest.h>

#include "harmon/error.hpp"
#include "harmon/toml.hpp"

using namespace harmon;

TEST_SUITE("toml") {

TEST_CASE("parse sections and scalar types") {
    const std::string text =
        "# run config\n"
        "name = \"demo\"\n"
        "\n"
        "[train]\n"
        "learning_rate = 2e-4\n"
        "batch_size = 64\n"
        "decay = true\n"
        "note = \"a # inside a string\"  # trailing comment\n";
    const auto t = toml::parse(text);

    std::string name;
    CHECK(toml::get(t, "", "name", name));
    CHECK(name == "demo");
    double lr = 0;
    CHECK(toml::get(t, "train", "learning_rate", lr));
    CHECK(lr == 2e-4);
    int batch = 0;
    CHECK(toml::get(t, "train", "batch_size", batch));
    CHECK(batch == 64);
    bool decay = false;
    CHECK(toml::get(t, "train", "decay", decay));
    CHECK(decay);
    std::string note;
    CHECK(toml::get(t, "train", "note", note));
    CHECK(note == "a # inside a string");
    CHECK_FALSE(toml::get(t, "train", "missing", lr));
}

TEST_CASE("integers promote to double on request") {
    const auto t = toml::parse("[a]\nx = 3\n");
    double x = 0;
    CHECK(toml::get(t, "a", "x", x));
    CHECK(x == 3.0);
}

TEST_CASE("write/parse is a fixed point") {
    toml::Table t;
    t[""]["top"] = std::string("level");
    t["augment"]["jitter_min"] = static_cast<int64_t>(256);
    t["augment"]["overlap_min"] = 0.2;
    t["train"]["learning_rate"] = 2e-4;
    t["train"]["lr_whole"] = 2.0;  // must stay a float through the round trip
    t["train"]["decay"] = true;
    t["train"]["name"] = std::string("with \"quotes\" and #hash");
    const std::string text = toml::write(t);
    const auto back = toml::parse(text);
    CHECK(back == t);
    CHECK(toml::write(back) == text);
}

TEST_CASE("errors carry line numbers") {
    try {
        toml::parse("[train]\nlearning_rate 2e-4\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(toml::parse("x = \"unterminated\n"), ParseError);
    CHECK_THROWS_AS(toml::parse("[unclosed\nx = 1\n"), ParseError);
    CHECK_THROWS_AS(toml::parse("x = not_a_value\n"), ParseError);
}

}  // TEST_SUITE
