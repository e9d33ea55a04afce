#include <catch2/catch.hpp>

#include "fractile/io.hpp"
#include "fractile/render.hpp"

using namespace fractile;

TEST_CASE("fractal definition round-trips through JSON") {
    auto carpet = fractal::sierpinski_carpet();
    auto j = io::generator_to_json(carpet);
    auto back = io::generator_from_json(j);
    CHECK(back.c == carpet.c);
    CHECK(back.points == carpet.points);
    // canonical order is lexicographic
    auto pts = j.at("points");
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Point a{pts[i - 1][0].get<std::int64_t>(), pts[i - 1][1].get<std::int64_t>()};
        Point b{pts[i][0].get<std::int64_t>(), pts[i][1].get<std::int64_t>()};
        CHECK(a < b);
    }
}

TEST_CASE("tile sets round-trip through JSON") {
    io::TileSetFile f;
    f.tau = 2;
    f.seed_tile = "seed";
    f.tiles.add_tile("seed", {"up", 2}, {"right", 1}, {"", 0}, {"", 0});
    f.tiles.add_tile("arm", {"", 0}, {"", 0}, {"up", 2}, {"", 0});
    f.provenance["seed"] = {"seed", {0, 0}, "origin"};
    f.provenance["arm"] = {"Y", {0, 1}, "count"};
    auto j = io::tileset_to_json(f);
    auto back = io::tileset_from_json(j);
    REQUIRE(back.tiles.size() == 2);
    CHECK(back.tau == 2);
    CHECK(back.seed_tile == "seed");
    for (std::size_t i = 0; i < back.tiles.size(); ++i) {
        const auto& a = f.tiles[static_cast<int>(i)];
        const auto& b = back.tiles[static_cast<int>(i)];
        CHECK(a.name == b.name);
        for (Dir d : all_dirs) {
            CHECK(f.tiles.color_name(a.side(d).color) == back.tiles.color_name(b.side(d).color));
            CHECK(a.side(d).strength == b.side(d).strength);
        }
    }
    CHECK(back.provenance.at("arm").component == "Y");
    CHECK(back.provenance.at("arm").type == Point{0, 1});
}

TEST_CASE("point dumps round-trip and sort") {
    PointSet pts{{3, 1}, {-2, 5}, {3, -4}, {0, 0}};
    auto text = io::points_to_text(pts);
    CHECK(io::points_from_text(text) == pts);
    CHECK(text == "-2 5\n0 0\n3 -4\n3 1\n");
}

TEST_CASE("assembly dumps round-trip") {
    tam::TileSet ts;
    ts.add_tile("a", {"", 0}, {"x", 1}, {"", 0}, {"", 0});
    ts.add_tile("b", {"", 0}, {"", 0}, {"", 0}, {"x", 1});
    tam::Assembly a;
    a.placements.emplace(Point{0, 0}, 0);
    a.placements.emplace(Point{1, 0}, 1);
    auto text = io::assembly_to_text(a, ts);
    auto back = io::assembly_from_text(text, ts);
    CHECK(back.placements.size() == 2);
    CHECK(back.at(Point{0, 0}) == 0);
    CHECK(back.at(Point{1, 0}) == 1);
}

TEST_CASE("step logs round-trip in order") {
    tam::TileSet ts;
    ts.add_tile("a", {"", 0}, {"x", 1}, {"", 0}, {"x", 1});
    std::vector<tam::Step> steps{{{1, 0}, 0}, {{2, 0}, 0}, {{-1, 0}, 0}};
    auto text = io::steps_to_text(steps, ts);
    auto back = io::steps_from_text(text, ts);
    REQUIRE(back.size() == steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        CHECK(back[i].pos == steps[i].pos);
        CHECK(back[i].tile == steps[i].tile);
    }
}

TEST_CASE("renders are deterministic") {
    std::vector<render::Cell> cells{{{0, 0}, 0}, {{1, 1}, 1}, {{2, 0}, 2}};
    Rect w{0, 0, 2, 1};
    CHECK(render::to_svg(cells, w) == render::to_svg(cells, w));
    CHECK(render::to_pgm(cells, w) == render::to_pgm(cells, w));
}

TEST_CASE("empty render is a valid image") {
    auto svg = render::to_svg({}, Rect{0, 0, 3, 3});
    CHECK(svg.find("<svg") != std::string::npos);
    auto pgm = render::to_pgm({}, Rect{0, 0, 3, 3});
    CHECK(pgm.substr(0, 2) == "P5");
}

TEST_CASE("pgm raster puts low y at the bottom") {
    std::vector<render::Cell> cells{{{0, 0}, 0}};
    auto pgm = render::to_pgm(cells, Rect{0, 0, 1, 1});
    // header "P5\n2 2\n255\n" then 4 bytes; (0,0) is bottom-left = row 1, col 0
    std::string body = pgm.substr(pgm.rfind('\n') + 1);
    REQUIRE(body.size() == 4);
    CHECK(static_cast<unsigned char>(body[2]) != 255);
    CHECK(static_cast<unsigned char>(body[0]) == 255);
}
