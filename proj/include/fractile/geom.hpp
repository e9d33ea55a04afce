#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fractile {

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr bool operator==(const Point&, const Point&) = default;
    friend constexpr auto operator<=>(const Point& a, const Point& b) {
        // lexicographic (x, y); canonical file order
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
    constexpr Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    constexpr Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    constexpr Point operator*(std::int64_t k) const { return {x * k, y * k}; }
};

struct PointHash {
    std::size_t operator()(Point p) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(p.x) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<std::uint64_t>(p.y) + 0x7f4a7c15u + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

using PointSet = std::unordered_set<Point, PointHash>;
template <typename V>
using PointMap = std::unordered_map<Point, V, PointHash>;

// Cardinal directions. Order matters: it is the tie-break order used by
// several deterministic traversals (E, N, W, S).
enum class Dir : int { E = 0, N = 1, W = 2, S = 3 };

constexpr std::array<Dir, 4> all_dirs{Dir::E, Dir::N, Dir::W, Dir::S};

constexpr Point unit(Dir d) {
    switch (d) {
        case Dir::E: return {1, 0};
        case Dir::N: return {0, 1};
        case Dir::W: return {-1, 0};
        case Dir::S: return {0, -1};
    }
    return {0, 0};
}

constexpr Dir opposite(Dir d) {
    switch (d) {
        case Dir::E: return Dir::W;
        case Dir::N: return Dir::S;
        case Dir::W: return Dir::E;
        case Dir::S: return Dir::N;
    }
    return Dir::E;
}

inline const char* dir_name(Dir d) {
    switch (d) {
        case Dir::E: return "E";
        case Dir::N: return "N";
        case Dir::W: return "W";
        case Dir::S: return "S";
    }
    return "?";
}

// Closed axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
    std::int64_t x0 = 0, y0 = 0, x1 = -1, y1 = -1;

    friend constexpr bool operator==(const Rect&, const Rect&) = default;
    constexpr bool empty() const { return x1 < x0 || y1 < y0; }
    constexpr bool contains(Point p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    constexpr std::int64_t width() const { return empty() ? 0 : x1 - x0 + 1; }
    constexpr std::int64_t height() const { return empty() ? 0 : y1 - y0 + 1; }
    constexpr std::int64_t area() const { return width() * height(); }
};

inline Rect bounding_box(const PointSet& pts) {
    Rect r;
    bool first = true;
    for (Point p : pts) {
        if (first) {
            r = {p.x, p.y, p.x, p.y};
            first = false;
            continue;
        }
        r.x0 = std::min(r.x0, p.x);
        r.y0 = std::min(r.y0, p.y);
        r.x1 = std::max(r.x1, p.x);
        r.y1 = std::max(r.y1, p.y);
    }
    return r;
}

inline std::vector<Point> sorted_points(const PointSet& pts) {
    std::vector<Point> v(pts.begin(), pts.end());
    std::sort(v.begin(), v.end());
    return v;
}

// Connectivity of the full grid graph on a finite point set.
// Empty and singleton sets count as connected.
inline bool fgg_connected(const PointSet& pts) {
    if (pts.size() <= 1) return true;
    PointSet seen;
    std::vector<Point> stack{*pts.begin()};
    seen.insert(*pts.begin());
    while (!stack.empty()) {
        Point p = stack.back();
        stack.pop_back();
        for (Dir d : all_dirs) {
            Point q = p + unit(d);
            if (pts.contains(q) && seen.insert(q).second) stack.push_back(q);
        }
    }
    return seen.size() == pts.size();
}

}  // namespace fractile
