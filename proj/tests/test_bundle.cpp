#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include "xlsec/keybundle.hpp"

using namespace xlsec;

namespace {

KeyBundle demo_bundle(CascadeKey cascade) {
    KeyBundle kb;
    kb.rsa = derive_keypair(13, 37, 5);
    kb.moduli = build_moduli_set({107, 109, 113});
    kb.kernel = LiftingKernel{2, 0, 0};
    kb.cascade = std::move(cascade);
    kb.signaling.order = 256;
    kb.signaling.pe = 0.01;
    kb.signaling.seed = 42;
    return kb;
}

// Removes the first line starting with `prefix`.
std::string drop_line(const std::string& text, const std::string& prefix) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::size_t end = eol == std::string::npos ? text.size() : eol + 1;
        if (text.compare(pos, prefix.size(), prefix) == 0)
            return text.substr(0, pos) + text.substr(end);
        pos = end;
    }
    FAIL("no line starts with '" << prefix << "'");
    return text;
}

std::string replace_once(const std::string& text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.substr(0, pos) + to + text.substr(pos + from.size());
}

} // namespace

TEST_CASE("bundles round trip through text") {
    for (const CascadeKey& cascade : {make_fig4x23_cascade(), make_demo8_cascade(),
                                      make_identity_cascade(), random_cascade_key(3)}) {
        const KeyBundle kb = demo_bundle(cascade);
        const std::string text = bundle_to_text(kb);
        const KeyBundle back = bundle_from_text(text);
        CHECK(back == kb);
        CHECK(bundle_to_text(back) == text);
    }
}

TEST_CASE("error-correcting stages serialize as table references") {
    const std::string text = bundle_to_text(demo_bundle(make_fig4x23_cascade()));
    CHECK(text.find("stage0.table=cascade4x23_stage1\n") != std::string::npos);
    CHECK(text.find("stage1.table=cascade4x23_stage2\n") != std::string::npos);
    CHECK(text.find(".rows=") == std::string::npos);
}

TEST_CASE("custom tables serialize row by row") {
    CascadeKey custom;
    custom.name = "toy";
    custom.stages = {load_transducer_table("0 0 1 0\n"
                                           "1 0 0 1\n"
                                           "0 1 1 1\n"
                                           "1 1 0 0\n")};
    const KeyBundle kb = demo_bundle(custom);
    const std::string text = bundle_to_text(kb);
    CHECK(text.find("stage0.rows=0 0 1 0;1 0 0 1;0 1 1 1;1 1 0 0\n") != std::string::npos);
    CHECK(bundle_from_text(text) == kb);
}

TEST_CASE("version and field strictness") {
    const std::string text = bundle_to_text(demo_bundle(make_fig4x23_cascade()));

    CHECK_THROWS_AS(bundle_from_text(drop_line(text, "format_version=")), format_error);
    CHECK_THROWS_AS(bundle_from_text(replace_once(text, "format_version=1", "format_version=2")),
                    version_error);
    CHECK_THROWS_AS(bundle_from_text(text + "\n[future]\nx=1\n"), version_error);
    CHECK_THROWS_AS(bundle_from_text(text + "extra_knob=1\n"), version_error);
    CHECK_THROWS_AS(bundle_from_text(replace_once(text, "seed=42", "seed=42\nseed=43")),
                    format_error);
    CHECK_THROWS_AS(bundle_from_text(drop_line(text, "seed=")), format_error);
    CHECK_THROWS_AS(bundle_from_text(drop_line(text, "[lifting]")), format_error);
    CHECK_THROWS_AS(bundle_from_text(replace_once(text, "[signaling]", "[signaling")), format_error);
    CHECK_THROWS_AS(bundle_from_text(replace_once(text, "seed=42", "seed 42")), format_error);
    CHECK_THROWS_AS(bundle_from_text(replace_once(text, "pe=0.01", "pe=fast")), format_error);
}

TEST_CASE("derived rsa fields are cross-checked") {
    const std::string text = bundle_to_text(demo_bundle(make_fig4x23_cascade()));
    CHECK(text.find("m=481\n") != std::string::npos);
    CHECK(text.find("d=173\n") != std::string::npos);
    CHECK_THROWS_AS(bundle_from_text(replace_once(text, "m=481", "m=483")), format_error);
    CHECK_THROWS_AS(bundle_from_text(replace_once(text, "d=173", "d=5")), format_error);
    // Both lines are optional; p, q, e are authoritative.
    CHECK(bundle_from_text(drop_line(drop_line(text, "m="), "d=")) ==
          demo_bundle(make_fig4x23_cascade()));
}

TEST_CASE("comments and blank lines are tolerated") {
    std::string text = bundle_to_text(demo_bundle(make_fig4x23_cascade()));
    text = replace_once(text, "seed=42", "seed=42   # trailing comment\n\n   \n");
    const KeyBundle kb = bundle_from_text(text);
    CHECK(kb.signaling.seed == 42);
}

TEST_CASE("bundle validation") {
    KeyBundle kb = demo_bundle(make_fig4x23_cascade());
    CHECK_NOTHROW(validate_bundle(kb));

    KeyBundle bad = kb;
    bad.rsa.d = 7;
    CHECK_THROWS_AS(validate_bundle(bad), key_error);

    bad = kb;
    bad.moduli = build_moduli_set({107, 257});
    CHECK_THROWS_AS(validate_bundle(bad), key_error);

    bad = kb;
    bad.kernel.h1 = 0;
    CHECK_THROWS_AS(validate_bundle(bad), key_error);

    bad = kb;
    {
        LinearStageSpec spec;
        spec.k = 3;
        spec.sets.push_back({{gf2_identity(3)}});
        spec.transitions.push_back({{0, 7, 0}});
        bad.cascade = CascadeKey{"w3", {compile_linear_transducer(spec)}, {}};
    }
    CHECK_THROWS_AS(validate_bundle(bad), key_error); // 3 does not divide 8

    bad = kb;
    bad.signaling.order = 100;
    CHECK_THROWS_AS(validate_bundle(bad), key_error);
    bad.signaling.order = 1;
    CHECK_THROWS_AS(validate_bundle(bad), key_error);
    bad.signaling.order = 2048;
    CHECK_THROWS_AS(validate_bundle(bad), key_error);

    bad = kb;
    bad.signaling.pe = 1.5;
    CHECK_THROWS_AS(validate_bundle(bad), key_error);
    CHECK_THROWS_AS(bundle_to_text(bad), key_error); // serializing checks too
}

TEST_CASE("bundle files") {
    const KeyBundle kb = demo_bundle(make_demo8_cascade());
    const std::string path = "test_bundle_tmp.key";
    save_bundle(kb, path);
    CHECK(load_bundle(path) == kb);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_bundle("does_not_exist.key"), value_error);
    CHECK_THROWS_AS(save_bundle(kb, "no_such_dir/x.key"), value_error);
}
