#include <catch2/catch.hpp>

#include "fractile/fractal.hpp"

using namespace fractile;
using fractal::GeneratorSet;

namespace {

// Independent recurrence evaluation, kept deliberately naive.
PointSet brute_stage(std::int64_t c, const std::vector<Point>& v, std::int64_t i) {
    PointSet cur{{0, 0}};
    std::int64_t scale = 1;
    for (std::int64_t k = 0; k < i; ++k) {
        PointSet next;
        for (Point p : cur) next.insert(p);
        for (Point g : v)
            for (Point p : cur) next.insert(p + g * scale);
        cur = next;
        scale *= c;
    }
    return cur;
}

bool sierpinski_member(Point p) { return p.x >= 0 && p.y >= 0 && (p.x & p.y) == 0; }

}  // namespace

TEST_CASE("validate_generator accepts the triangle") {
    auto g = fractal::validate_generator(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}});
    CHECK(g.c == 2);
    CHECK(g.points.size() == 3);
}

TEST_CASE("validate_generator rejects degenerate inputs") {
    CHECK_THROWS_AS(fractal::validate_generator(2, {Point{0, 0}, Point{1, 1}}), Error);
    try {
        fractal::validate_generator(2, {Point{0, 0}, Point{1, 1}});
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::DegenerateDiagonal);
    }

    PointSet full;
    for (std::int64_t x = 0; x < 3; ++x)
        for (std::int64_t y = 0; y < 3; ++y) full.insert({x, y});
    try {
        fractal::validate_generator(3, full);
        FAIL("full square accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::FullSquare);
    }

    try {
        fractal::validate_generator(1, {Point{0, 0}});
        FAIL("scale 1 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::ScaleTooSmall);
    }

    try {
        fractal::validate_generator(2, {Point{0, 0}, Point{2, 0}});
        FAIL("out-of-range point accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::OutOfRange);
    }
}

TEST_CASE("stage matches the recurrence") {
    auto tri = fractal::sierpinski_triangle();
    CHECK(fractal::stage(tri, 0).points == PointSet{{0, 0}});
    CHECK(fractal::stage(tri, 1).points == PointSet{{0, 0}, {1, 0}, {0, 1}});

    auto carpet = fractal::sierpinski_carpet();
    auto s2 = fractal::stage(carpet, 2);
    CHECK(s2.points.size() == 64);  // 8^2
    CHECK(s2.points == brute_stage(3, carpet.points, 2));
}

TEST_CASE("stage cardinality is |V|^i when the origin is in V") {
    auto tri = fractal::sierpinski_triangle();
    std::int64_t expect = 1;
    for (std::int64_t i = 0; i <= 6; ++i) {
        auto st = fractal::stage(tri, i);
        CHECK(static_cast<std::int64_t>(st.points.size()) == expect);
        expect *= 3;
    }
}

TEST_CASE("stages nest") {
    auto carpet = fractal::sierpinski_carpet();
    auto prev = fractal::stage(carpet, 0);
    for (std::int64_t i = 1; i <= 3; ++i) {
        auto cur = fractal::stage(carpet, i);
        for (Point p : prev.points) CHECK(cur.points.contains(p));
        prev = cur;
    }
}

TEST_CASE("triangle stages agree with the bitwise-AND oracle") {
    auto tri = fractal::sierpinski_triangle();
    for (std::int64_t i : {3, 5}) {
        auto st = fractal::stage(tri, i);
        std::int64_t lim = 1;
        for (std::int64_t k = 0; k < i; ++k) lim *= 2;
        for (std::int64_t x = 0; x < lim; ++x)
            for (std::int64_t y = 0; y < lim; ++y)
                REQUIRE(st.points.contains(Point{x, y}) == sierpinski_member({x, y}));
    }
}

TEST_CASE("stage honors the point budget") {
    auto carpet = fractal::sierpinski_carpet();
    CHECK_THROWS_AS(fractal::stage(carpet, 8, 1000), Error);
}

TEST_CASE("is_nice") {
    CHECK(fractal::is_nice(fractal::sierpinski_triangle()));
    CHECK(fractal::is_nice(fractal::sierpinski_carpet()));

    // carpet with (0,1) removed: axis column incomplete
    PointSet v;
    for (std::int64_t x = 0; x < 3; ++x)
        for (std::int64_t y = 0; y < 3; ++y)
            if (!(x == 1 && y == 1) && !(x == 0 && y == 1)) v.insert({x, y});
    CHECK_FALSE(fractal::is_nice(fractal::validate_generator(3, v)));
}

TEST_CASE("is_pinch_point") {
    auto tri_cls = fractal::is_pinch_point(fractal::sierpinski_triangle());
    CHECK(tri_cls.pinch_point);
    CHECK(tri_cls.failed_conditions.empty());

    auto carpet_cls = fractal::is_pinch_point(fractal::sierpinski_carpet());
    CHECK_FALSE(carpet_cls.pinch_point);
    CHECK(std::count(carpet_cls.failed_conditions.begin(), carpet_cls.failed_conditions.end(), 2) == 1);
    CHECK(std::count(carpet_cls.failed_conditions.begin(), carpet_cls.failed_conditions.end(), 3) == 1);

    auto g = fractal::validate_generator(
        3, {Point{0, 0}, Point{0, 2}, Point{2, 0}, Point{1, 0}, Point{0, 1}});
    auto cls = fractal::is_pinch_point(g);
    CHECK(cls.pinch_point);
}

TEST_CASE("classification is pure") {
    auto carpet = fractal::sierpinski_carpet();
    auto a = fractal::is_pinch_point(carpet);
    auto b = fractal::is_pinch_point(carpet);
    CHECK(a.pinch_point == b.pinch_point);
    CHECK(a.failed_conditions == b.failed_conditions);
    CHECK(fractal::is_nice(carpet) == fractal::is_nice(carpet));
}

TEST_CASE("fgg_connected") {
    CHECK(fgg_connected(PointSet{}));
    CHECK(fgg_connected(PointSet{{5, 5}}));
    CHECK(fgg_connected(PointSet{{0, 0}, {1, 0}, {0, 1}}));
    CHECK_FALSE(fgg_connected(PointSet{{0, 0}, {1, 1}}));
    CHECK(fgg_connected(fractal::sierpinski_carpet().point_set));
}
