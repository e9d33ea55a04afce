#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fractile/error.hpp"
#include "fractile/geom.hpp"

namespace fractile::fractal {

// Generator of a c-discrete self-similar fractal: a scale factor c >= 2 and a
// point set V inside the c x c square. Excluded degenerate cases: the main
// diagonal (which would make X = N^2 via no growth structure at all) and the
// full square (X = N^2).
struct GeneratorSet {
    std::int64_t c = 2;
    std::vector<Point> points;  // sorted lexicographically, unique
    PointSet point_set;

    bool contains(Point p) const { return point_set.contains(p); }
};

struct StageSet {
    std::int64_t index = 0;
    PointSet points;
};

struct Classification {
    bool nice = false;
    bool pinch_point = false;
    std::vector<int> failed_conditions;  // numbered as in the class definition below
};

inline constexpr std::int64_t kDefaultStageCap = 10'000'000;

inline GeneratorSet validate_generator(std::int64_t c, const PointSet& raw) {
    if (c < 2) throw Error(Errc::ScaleTooSmall, "scale factor must be at least 2");
    for (Point p : raw) {
        if (p.x < 0 || p.x >= c || p.y < 0 || p.y >= c)
            throw Error(Errc::OutOfRange, "generator point outside [0,c)^2");
    }
    if (static_cast<std::int64_t>(raw.size()) == c) {
        bool diag = true;
        for (std::int64_t i = 0; i < c; ++i)
            if (!raw.contains({i, i})) { diag = false; break; }
        if (diag) throw Error(Errc::DegenerateDiagonal, "generator equals the diagonal");
    }
    if (static_cast<std::int64_t>(raw.size()) == c * c)
        throw Error(Errc::FullSquare, "generator equals the full square");
    GeneratorSet g;
    g.c = c;
    g.point_set = raw;
    g.points = sorted_points(raw);
    return g;
}

inline GeneratorSet validate_generator(std::int64_t c, std::initializer_list<Point> raw) {
    return validate_generator(c, PointSet(raw.begin(), raw.end()));
}

// i-th stage: X_0 = {(0,0)}, X_{i+1} = X_i  U  (X_i + c^i V).
inline StageSet stage(const GeneratorSet& g, std::int64_t i,
                      std::int64_t cap = kDefaultStageCap) {
    if (i < 0) throw Error(Errc::BadInput, "stage index must be nonnegative");
    PointSet cur{{0, 0}};
    std::int64_t scale = 1;
    for (std::int64_t k = 0; k < i; ++k) {
        PointSet next = cur;
        for (Point v : g.points) {
            Point off = v * scale;
            for (Point p : cur) next.insert(p + off);
            if (static_cast<std::int64_t>(next.size()) > cap)
                throw Error(Errc::ResourceLimit, "stage exceeds point budget");
        }
        cur = std::move(next);
        scale *= g.c;
    }
    return StageSet{i, std::move(cur)};
}

inline bool is_nice(const GeneratorSet& g) {
    for (std::int64_t k = 0; k < g.c; ++k) {
        if (!g.contains({k, 0})) return false;
        if (!g.contains({0, k})) return false;
    }
    return fgg_connected(g.point_set);
}

// Conditions for the pinch-point class:
//   (1) {(0,0),(0,c-1),(c-1,0)} subset of V
//   (2) V
//       has no point in {1..c-1} x {c-1}
//   (3) V has no point in {c-1} x {1..c-1}
//   (4) the full grid graph on V is connected
inline Classification is_pinch_point(const GeneratorSet& g) {
    Classification cls;
    cls.nice = is_nice(g);
    const std::int64_t c = g.c;
    if (!(g.contains({0, 0}) && g.contains({0, c - 1}) && g.contains({c - 1, 0})))
        cls.failed_conditions.push_back(1);
    for (std::int64_t x = 1; x < c; ++x)
        if (g.contains({x, c - 1})) { cls.failed_conditions.push_back(2); break; }
    for (std::int64_t y = 1; y < c; ++y)
        if (g.contains({c - 1, y})) { cls.failed_conditions.push_back(3); break; }
    if (!fgg_connected(g.point_set)) cls.failed_conditions.push_back(4);
    cls.pinch_point = cls.failed_conditions.empty();
    return cls;
}

// Common generators, used throughout the tests and as CLI conveniences.
inline GeneratorSet sierpinski_triangle() {
    return validate_generator(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}});
}

inline GeneratorSet sierpinski_carpet() {
    PointSet v;
    for (std::int64_t x = 0; x < 3; ++x)
        for (std::int64_t y = 0; y < 3; ++y)
            if (!(x == 1 && y == 1)) v.insert({x, y});
    return validate_generator(3, v);
}

}  // namespace fractile::fractal
