#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fractile/error.hpp"
#include "fractile/fibered.hpp"
#include "fractile/fractal.hpp"
#include "fractile/geom.hpp"

namespace fractile::compiler {

using fractal::GeneratorSet;

// Number of consecutive least-significant zero digits of j in base c.
inline std::int64_t rho(std::int64_t j, std::int64_t c) {
    std::int64_t t = 0;
    while (j % c == 0) { j /= c; ++t; }
    return t;
}

struct CounterRow {
    std::int64_t value = 0;
    std::int64_t repetition = 1;  // rho(value) for spacing values, 1 otherwise
    bool spacing = false;
};

// Rows of the modified base-c counter of the given digit width: j = 1 ..
// c^width - 1 in order, multiples of c repeated rho(j) times. One list entry
// per physical row.
inline std::vector<CounterRow> counter_rows(std::int64_t c, std::int64_t width) {
    if (c < 2) throw Error(Errc::ScaleTooSmall, "base must be at least 2");
    if (width < 2) throw Error(Errc::BadInput, "counter width must be at least 2");
    std::int64_t top = 1;
    for (std::int64_t i = 0; i < width; ++i) top *= c;
    std::vector<CounterRow> rows;
    for (std::int64_t j = 1; j < top; ++j) {
        bool spacing = j % c == 0;
        std::int64_t reps = spacing ? rho(j, c) : 1;
        for (std::int64_t r = 0; r < reps; ++r) rows.push_back({j, reps, spacing});
    }
    return rows;
}

// Height of the row block for values 1..m: R(m) = m + sum_{t>=2} floor(m/c^t).
inline std::int64_t row_count_through(std::int64_t m, std::int64_t c) {
    std::int64_t r = m;
    for (std::int64_t p = c * c; p <= m; p *= c) {
        r += m / p;
        if (p > m / c) break;  // overflow guard
    }
    return r;
}

// Type vector of the oppositely oriented counter attaching at a spacing-row
// group of value j: (0, (j/c) mod c).
inline Point attached_counter_type(std::int64_t j, std::int64_t c) {
    if (j <= 0 || j % c != 0) throw Error(Errc::NotSpacingValue, "value is not a positive multiple of c");
    return Point{0, (j / c) % c};
}

enum class GrowthClass {
    ForwardVertical,
    ForwardHorizontal,
    ReverseVertical,
    ReverseHorizontal,
    AxisVertical,
    AxisHorizontal,
};

inline const char* growth_class_name(GrowthClass g) {
    switch (g) {
        case GrowthClass::ForwardVertical: return "forward-vertical";
        case GrowthClass::ForwardHorizontal: return "forward-horizontal";
        case GrowthClass::ReverseVertical: return "reverse-vertical";
        case GrowthClass::ReverseHorizontal: return "reverse-horizontal";
        case GrowthClass::AxisVertical: return "axis-vertical";
        case GrowthClass::AxisHorizontal: return "axis-horizontal";
    }
    return "?";
}

struct SpanningPlan {
    std::vector<std::pair<Point, Point>> tree_edges;  // (parent, child), BFS tree over V
    std::vector<std::pair<Point, Point>> reversed;    // E^R
    std::map<std::pair<std::int64_t, std::int64_t>, Point> u_in_map;
    std::map<std::pair<std::int64_t, std::int64_t>, GrowthClass> growth_map;

    Point u_in(Point u) const { return u_in_map.at({u.x, u.y}); }
    GrowthClass growth_class(Point u) const { return growth_map.at({u.x, u.y}); }
    bool has(Point u) const { return u_in_map.contains({u.x, u.y}); }
};

// Phase 1: BFS spanning tree of the full grid graph on V rooted at the
// origin (neighbor order E, N, W, S; FIFO queue), reversed edges, and the
// two special axis edges ((0,1),(0,c-1)) and ((1,0),(c-1,0)).
inline SpanningPlan plan(const GeneratorSet& g) {
    if (!fractal::is_nice(g)) throw Error(Errc::NotNice, "spanning plan needs a nice generator");
    SpanningPlan sp;
    PointSet visited{{0, 0}};
    std::vector<Point> queue{{0, 0}};
    std::size_t head = 0;
    PointMap<Point> parent;
    while (head < queue.size()) {
        Point u = queue[head++];
        for (Dir d : all_dirs) {  // E, N, W, S
            Point v = u + unit(d);
            if (!g.contains(v) || !visited.insert(v).second) continue;
            parent.emplace(v, u);
            sp.tree_edges.emplace_back(u, v);
            queue.push_back(v);
        }
    }
    for (auto& [u, v] : sp.tree_edges)
        if (u != Point{0, 0}) sp.reversed.emplace_back(v, u);
    sp.reversed.emplace_back(Point{0, 1}, Point{0, g.c - 1});
    sp.reversed.emplace_back(Point{1, 0}, Point{g.c - 1, 0});

    for (auto& [v, u] : sp.reversed) sp.u_in_map[{v.x, v.y}] = u;
    for (auto& [key, u] : sp.u_in_map) {
        Point v{key.first, key.second};
        GrowthClass cls;
        if (v == Point{0, 1})
            cls = GrowthClass::AxisVertical;
        else if (v == Point{1, 0})
            cls = GrowthClass::AxisHorizontal;
        else if (u == v + Point{0, -1})
            cls = GrowthClass::ForwardVertical;
        else if (u == v + Point{-1, 0})
            cls = GrowthClass::ForwardHorizontal;
        else if (u == v + Point{0, 1})
            cls = GrowthClass::ReverseVertical;
        else if (u == v + Point{1, 0})
            cls = GrowthClass::ReverseHorizontal;
        else
            throw Error(Errc::BadInput, "spanning tree produced a non-adjacent edge");
        sp.growth_map[{v.x, v.y}] = cls;
    }
    return sp;
}

}  // namespace fractile::compiler
