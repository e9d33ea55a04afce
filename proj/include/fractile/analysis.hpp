#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fractile/error.hpp"
#include "fractile/fibered.hpp"
#include "fractile/fractal.hpp"
#include "fractile/geom.hpp"
#include "fractile/tiles.hpp"

namespace fractile::analysis {

using fractal::GeneratorSet;

struct DimensionSample {
    std::int64_t n = 0;
    std::int64_t count = 0;
    double ratio = 0.0;
};

struct DimensionEstimate {
    std::vector<DimensionSample> samples;
    double estimate = 0.0;
    std::optional<double> target;
};

using MembershipOracle = std::function<bool(Point)>;

// Counts A_{<=n} = {(k,l) in A : |k|+|l| <= n} by walking the taxicab ball.
inline std::int64_t count_ball(const MembershipOracle& in_a, std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t x = -n; x <= n; ++x) {
        std::int64_t r = n - std::llabs(x);
        for (std::int64_t y = -r; y <= r; ++y)
            if (in_a({x, y})) ++count;
    }
    return count;
}

inline DimensionEstimate estimate_from_counts(const std::vector<std::int64_t>& n_values,
                                              const std::vector<std::int64_t>& counts) {
    DimensionEstimate est;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        std::int64_t n = n_values[i];
        if (n < 2) throw Error(Errc::BadInput, "ratio undefined for n < 2");
        double ratio = counts[i] <= 0 ? 0.0
                                      : std::log(static_cast<double>(counts[i])) /
                                            std::log(static_cast<double>(n));
        est.samples.push_back({n, counts[i], ratio});
    }
    if (est.samples.empty()) throw Error(Errc::BadInput, "no sample sizes given");
    est.estimate = est.samples.back().ratio;
    return est;
}

inline DimensionEstimate zeta_dimension_estimate(const MembershipOracle& in_a,
                                                 std::vector<std::int64_t> n_values) {
    std::sort(n_values.begin(), n_values.end());
    std::vector<std::int64_t> counts;
    counts.reserve(n_values.size());
    for (std::int64_t n : n_values) counts.push_back(count_ball(in_a, n));
    return estimate_from_counts(n_values, counts);
}

// Same estimate computed from a materialized point set; cheaper than ball
// iteration when the set is sparse.
inline DimensionEstimate zeta_dimension_estimate(const PointSet& a,
                                                 std::vector<std::int64_t> n_values) {
    std::sort(n_values.begin(), n_values.end());
    std::vector<std::int64_t> counts(n_values.size(), 0);
    for (Point p : a) {
        std::int64_t r = std::llabs(p.x) + std::llabs(p.y);
        for (std::size_t i = 0; i < n_values.size(); ++i)
            if (r <= n_values[i]) ++counts[i];
    }
    return estimate_from_counts(n_values, counts);
}

// Membership in X = union of all stages, for generators containing the
// origin: (x,y) is in X iff every base-c digit pair of (x,y) lies in V.
inline bool digit_membership(const GeneratorSet& g, Point p) {
    if (p.x < 0 || p.y < 0) return false;
    std::int64_t x = p.x, y = p.y;
    while (x > 0 || y > 0) {
        if (!g.contains({x % g.c, y % g.c})) return false;
        x /= g.c;
        y /= g.c;
    }
    return true;
}

struct DimEquality {
    DimensionEstimate plain;    // X, through the stage oracle
    DimensionEstimate fibered;  // the fibered version, through its window oracle
    double difference = 0.0;
};

namespace detail {

// |X ∩ ball(n)| by recursing over stage blocks: a stage-k block either lies
// wholly inside the taxicab ball (contributing |V|^k), wholly outside, or
// splits into its c^2 children. Agrees with counting over materialized
// stages; the digit characterization of membership is the stage recurrence
// in closed form.
inline std::int64_t count_stage_ball(const GeneratorSet& g, Point corner, std::int64_t size,
                                     std::int64_t count_if_full, std::int64_t n) {
    if (corner.x + corner.y > n) return 0;
    if (corner.x + corner.y + 2 * (size - 1) <= n) return count_if_full;
    if (size == 1) return 1;  // corner is inside the ball, checked above
    std::int64_t sub = size / g.c;
    std::int64_t sub_count = count_if_full / static_cast<std::int64_t>(g.points.size());
    std::int64_t total = 0;
    for (Point v : g.points)
        total += count_stage_ball(g, corner + v * sub, sub, sub_count, n);
    return total;
}

inline std::int64_t count_plain_ball(const GeneratorSet& g, std::int64_t n) {
    std::int64_t size = 1, full = 1;
    while (size < n + 1) {
        size *= g.c;
        full *= static_cast<std::int64_t>(g.points.size());
    }
    return count_stage_ball(g, {0, 0}, size, full, n);
}

}  // namespace detail

inline DimEquality dim_equality_check(const GeneratorSet& g, std::int64_t n,
                                      std::int64_t cap = fractal::kDefaultStageCap) {
    if (!fractal::is_nice(g)) throw Error(Errc::NotNice, "dimension equality needs a nice generator");
    if (n < 2) throw Error(Errc::BadInput, "ratio undefined for n < 2");
    std::vector<std::int64_t> ns;
    for (std::int64_t k = n; k >= 2 && ns.size() < 6; k /= g.c) ns.push_back(k);
    std::sort(ns.begin(), ns.end());

    DimEquality out;
    std::vector<std::int64_t> plain_counts;
    plain_counts.reserve(ns.size());
    for (std::int64_t k : ns) plain_counts.push_back(detail::count_plain_ball(g, k));
    out.plain = estimate_from_counts(ns, plain_counts);

    fibered::Model model(g, cap);
    PointSet fib = model.window(Rect{-n, -n, n, n});
    out.fibered = zeta_dimension_estimate(fib, ns);
    out.difference = std::fabs(out.plain.estimate - out.fibered.estimate);
    return out;
}

struct RootedSubgraph {
    Point root;
    std::vector<Point> vertices;  // sorted
};

struct LowerBound {
    std::int64_t count = 0;  // pairwise non-similar rooted subgraphs found
    std::vector<RootedSubgraph> subgraphs;
};

// B_k = X  intersect  ([0, c^k - 1]^2 + r_k) with r_k = c^k * (c(c-1), c-1).
// Distinct (translation-inequivalent) B_k give a lower bound on the number
// of tile types of any singly-seeded TAS in which X strictly self-assembles.
inline LowerBound subgraph_lower_bound(const GeneratorSet& g, std::int64_t m) {
    auto cls = fractal::is_pinch_point(g);
    if (!cls.pinch_point)
        throw Error(Errc::NotPinchPoint, "lower bound applies to pinch-point generators");
    LowerBound out;
    std::vector<std::vector<Point>> shapes;
    for (std::int64_t k = 0; k < m; ++k) {
        std::int64_t ck = 1;
        for (std::int64_t i = 0; i < k; ++i) ck *= g.c;
        Point r{ck * g.c * (g.c - 1), ck * (g.c - 1)};
        RootedSubgraph sub;
        sub.root = r;
        for (std::int64_t dx = 0; dx < ck; ++dx)
            for (std::int64_t dy = 0; dy < ck; ++dy) {
                Point p{r.x + dx, r.y + dy};
                if (digit_membership(g, p)) sub.vertices.push_back(p);
            }
        std::sort(sub.vertices.begin(), sub.vertices.end());
        shapes.push_back(sub.vertices);
        out.subgraphs.push_back(std::move(sub));
    }
    // similarity = equality up to translation
    auto similar = [](const std::vector<Point>& a, const std::vector<Point>& b) {
        if (a.size() != b.size()) return false;
        if (a.empty()) return true;
        Point shift = b.front() - a.front();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] + shift != b[i]) return false;
        return true;
    };
    std::vector<std::vector<Point>> classes;
    for (const auto& s : shapes) {
        bool found = false;
        for (const auto& c : classes)
            if (similar(s, c)) { found = true; break; }
        if (!found) classes.push_back(s);
    }
    out.count = static_cast<std::int64_t>(classes.size());
    return out;
}

// Uniquified self-assembly of a simple path at temperature 1: one tile type
// per position, each consecutive pair sharing a matched in/out-suffixed
// color, null glues elsewhere. The resulting TAS is directed with terminal
// assembly exactly the path.
inline tam::TAS path_to_tas(const std::vector<Point>& path) {
    if (path.empty() || path.front() != Point{0, 0})
        throw Error(Errc::NotAPath, "path must start at the origin");
    PointSet seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!seen.insert(path[i]).second) throw Error(Errc::NotAPath, "path revisits a point");
        if (i > 0) {
            Point d = path[i] - path[i - 1];
            if (std::llabs(d.x) + std::llabs(d.y) != 1)
                throw Error(Errc::NotAPath, "path steps must be unit vectors");
        }
    }
    tam::TAS tas;
    tas.tau = 1;
    for (std::size_t i = 0; i < path.size(); ++i) {
        tam::TileType t;
        t.name = "path:" + std::to_string(i);
        if (i > 0) {
            Point d = path[i - 1] - path[i];
            for (Dir dir : all_dirs)
                if (unit(dir) == d)
                    t.side(dir) = {tas.tiles.intern_color("e" + std::to_string(i) + ":out.in"), 1};
        }
        if (i + 1 < path.size()) {
            Point d = path[i + 1] - path[i];
            for (Dir dir : all_dirs)
                if (unit(dir) == d)
                    t.side(dir) = {tas.tiles.intern_color("e" + std::to_string(i + 1) + ":out.in"), 1};
        }
        tas.tiles.add_tile(std::move(t));
    }
    tas.seed.placements.emplace(Point{0, 0}, 0);
    return tas;
}

}  // namespace fractile::analysis
