#include <catch2/catch.hpp>

#include "fractile/compiler.hpp"
#include "fractile/localdet.hpp"
#include "fractile/engine.hpp"
#include <set>
#include "fractile/fibered.hpp"

using namespace fractile;
using compiler::CompiledTAS;

namespace {

engine::CheckReport check_stage(const CompiledTAS& ct, fibered::Model& model, std::int64_t stage,
                                std::int64_t max_tiles = 200000) {
    auto t = model.fiber_stage(stage).T;
    Rect w = bounding_box(t);
    PointSet target = model.window(w);
    return engine::strict_window_check(ct.tas, target, w,
                                       {engine::PolicyKind::Lexicographic, 0}, max_tiles);
}

}  // namespace

TEST_CASE("labels render and parse round-trip") {
    std::vector<std::string> labels{
        "Y:(2,0):count:3:d1:c", "X:(0,1):at:mf10q2", "S:(1,1):ent:sa",
        "T0:(0,0):cell:x2y1",   "seed:(0,0):origin:o",
    };
    for (const auto& s : labels) {
        auto l = compiler::parse_label(s);
        CHECK(compiler::render_label(l) == s);
    }
    auto l = compiler::parse_label("Y:(2,0):count:3:d1:c");
    CHECK(l.component == "Y");
    CHECK(l.type == Point{2, 0});
    CHECK(l.role == "count");
    CHECK(l.digit == 1);
    CHECK(l.carry);
    CHECK_THROWS_AS(compiler::parse_label("nope"), Error);
}

TEST_CASE("every compiled tile and glue label parses") {
    auto ct = compiler::compile(fractal::sierpinski_triangle());
    for (const auto& t : ct.tas.tiles.tiles()) {
        auto l = compiler::parse_label(t.name);
        CHECK(compiler::render_label(l) == t.name);
        for (Dir d : all_dirs) {
            const auto& glue = t.side(d);
            if (glue.color == 0) continue;
            const std::string& name = ct.tas.tiles.color_name(glue.color);
            auto gl = compiler::parse_label(name);
            CHECK(compiler::render_label(gl) == name);
        }
    }
}

TEST_CASE("compile rejects non-nice generators") {
    auto g = fractal::validate_generator(2, {Point{0, 0}, Point{1, 0}});
    CHECK_THROWS_AS(compiler::compile(g), Error);
}

TEST_CASE("compiled triangle assembles its fibered stages") {
    auto tri = fractal::sierpinski_triangle();
    auto ct = compiler::compile(tri);
    REQUIRE(ct.tas.tau == 2);
    fibered::Model model(tri);
    for (std::int64_t stage = 0; stage <= 2; ++stage) {
        auto rep = check_stage(ct, model, stage);
        INFO("stage " << stage << ": " << rep.missing.size() << " missing, " << rep.extra.size()
                      << " extra, placed " << rep.tiles_placed);
        if (!rep.missing.empty()) {
            INFO("first missing: " << rep.missing[0].x << "," << rep.missing[0].y);
        }
        if (!rep.extra.empty()) {
            INFO("first extra: " << rep.extra[0].x << "," << rep.extra[0].y);
        }
        CHECK(rep.passed());
    }
}

TEST_CASE("compiled carpet assembles its fibered stages") {
    auto carpet = fractal::sierpinski_carpet();
    auto ct = compiler::compile(carpet);
    fibered::Model model(carpet);
    for (std::int64_t stage = 0; stage <= 1; ++stage) {
        auto rep = check_stage(ct, model, stage);
        INFO("stage " << stage << ": " << rep.missing.size() << " missing, " << rep.extra.size()
                      << " extra, placed " << rep.tiles_placed);
        CHECK(rep.passed());
    }
}

TEST_CASE("compiled reverse-growth generator assembles") {
    // (2,2) is reachable only from (3,2): exercises reverse growth
    PointSet v;
    for (std::int64_t k = 0; k < 4; ++k) {
        v.insert({k, 0});
        v.insert({0, k});
    }
    v.insert({3, 1});
    v.insert({3, 2});
    v.insert({2, 2});
    auto g = fractal::validate_generator(4, v);
    auto ct = compiler::compile(g);
    fibered::Model model(g);
    auto rep = check_stage(ct, model, 0, 400000);
    INFO("stage 0: " << rep.missing.size() << " missing, " << rep.extra.size() << " extra");
    CHECK(rep.passed());
}

TEST_CASE("compiled systems are policy independent") {
    auto tri = fractal::sierpinski_triangle();
    auto ct = compiler::compile(tri);
    fibered::Model model(tri);
    auto t1 = model.fiber_stage(1).T;
    Rect w = bounding_box(t1);
    auto lex = engine::run(ct.tas, {engine::PolicyKind::Lexicographic, 0}, w);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto rnd = engine::run(ct.tas, {engine::PolicyKind::SeededRandom, seed}, w, 100000, false);
        REQUIRE(rnd.assembly.size() == lex.assembly.size());
        for (auto& [p, t] : lex.assembly.placements) REQUIRE(rnd.assembly.at(p) == t);
    }
}

TEST_CASE("provenance covers every tile with spec components") {
    for (auto g : {fractal::sierpinski_triangle(), fractal::sierpinski_carpet()}) {
        auto ct = compiler::compile(g);
        std::set<std::string> allowed{"seed", "S", "X", "Y", "fiber-edge", "internal"};
        for (const auto& t : ct.tas.tiles.tiles()) {
            auto it = ct.provenance.find(t.name);
            REQUIRE(it != ct.provenance.end());
            REQUIRE(allowed.contains(it->second.component));
        }
    }
}

TEST_CASE("carpet labels parse too") {
    auto ct = compiler::compile(fractal::sierpinski_carpet());
    for (const auto& t : ct.tas.tiles.tiles()) {
        auto l = compiler::parse_label(t.name);
        REQUIRE(compiler::render_label(l) == t.name);
        for (Dir d : all_dirs) {
            const auto& glue = t.side(d);
            if (glue.color == 0) continue;
            const std::string& name = ct.tas.tiles.color_name(glue.color);
            REQUIRE(compiler::render_label(compiler::parse_label(name)) == name);
        }
    }
}

TEST_CASE("compiled triangle matches the oracle at stage 4") {
    auto tri = fractal::sierpinski_triangle();
    auto ct = compiler::compile(tri);
    fibered::Model model(tri);
    auto rep = check_stage(ct, model, 4, 1000000);
    CHECK(rep.passed());
    CHECK(rep.tiles_placed == 2541);
}

TEST_CASE("compiled carpet run is locally deterministic on its stage-2 window") {
    auto carpet = fractal::sierpinski_carpet();
    auto ct = compiler::compile(carpet);
    fibered::Model model(carpet);
    Rect w = bounding_box(model.fiber_stage(2).T);
    auto run = engine::run(ct.tas, {engine::PolicyKind::Lexicographic, 0}, w, 1000000);
    auto rep = localdet::check_local_determinism(ct.tas, run.steps, w);
    CHECK(rep.cond1_violations.empty());
    CHECK(rep.cond2_violations.empty());
    CHECK(rep.cond3_status == localdet::Cond3::WindowSaturated);
    CHECK(rep.cond2_ops <= run.assembly.size() * ct.tas.tiles.size());
}

TEST_CASE("every nice c=3 generator compiles and assembles its first stages") {
    // exhaustive: the axes plus any interior subset keeping the grid graph
    // connected (the full square is excluded by validation)
    std::vector<Point> interior{{1, 1}, {2, 1}, {1, 2}, {2, 2}};
    int verified = 0;
    for (int mask = 0; mask < 16; ++mask) {
        PointSet v;
        for (std::int64_t k = 0; k < 3; ++k) {
            v.insert({k, 0});
            v.insert({0, k});
        }
        for (int b = 0; b < 4; ++b)
            if (mask & (1 << b)) v.insert(interior[static_cast<std::size_t>(b)]);
        if (v.size() == 9) continue;  // full square
        fractal::GeneratorSet g;
        try {
            g = fractal::validate_generator(3, v);
        } catch (const Error&) {
            continue;
        }
        if (!fractal::is_nice(g)) continue;
        auto ct = compiler::compile(g);
        fibered::Model model(g);
        for (std::int64_t st = 0; st <= 1; ++st) {
            auto rep = check_stage(ct, model, st, 400000);
            INFO("mask " << mask << " stage " << st);
            REQUIRE(rep.passed());
        }
        ++verified;
    }
    CHECK(verified >= 10);
}

TEST_CASE("compilation is deterministic") {
    auto a = compiler::compile(fractal::sierpinski_carpet());
    auto b = compiler::compile(fractal::sierpinski_carpet());
    REQUIRE(a.tas.tiles.size() == b.tas.tiles.size());
    for (std::size_t i = 0; i < a.tas.tiles.size(); ++i) {
        const auto& ta = a.tas.tiles[static_cast<int>(i)];
        const auto& tb = b.tas.tiles[static_cast<int>(i)];
        REQUIRE(ta.name == tb.name);
        for (Dir d : all_dirs) {
            REQUIRE(a.tas.tiles.color_name(ta.side(d).color) ==
                    b.tas.tiles.color_name(tb.side(d).color));
            REQUIRE(ta.side(d).strength == tb.side(d).strength);
        }
    }
}
