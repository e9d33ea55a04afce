#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "fractile/error.hpp"
#include "fractile/geom.hpp"
#include "fractile/tiles.hpp"

namespace fractile::tam {

struct BindingEdge {
    int a = 0, b = 0;             // vertex indices
    std::int64_t weight = 0;      // bond strength
};

struct BindingGraph {
    std::vector<Point> vertices;
    std::vector<BindingEdge> edges;
};

inline BindingGraph binding_graph(const Assembly& a, const TileSet& ts) {
    BindingGraph g;
    PointMap<int> index;
    g.vertices.reserve(a.placements.size());
    for (auto& [p, t] : a.placements) {
        if (t < 0 || t >= static_cast<int>(ts.size()))
            throw Error(Errc::BadTileIndex, "placement refers to missing tile type");
        index.emplace(p, static_cast<int>(g.vertices.size()));
        g.vertices.push_back(p);
    }
    for (auto& [p, t] : a.placements) {
        // one direction per unordered pair
        for (Dir d : {Dir::E, Dir::N}) {
            Point q = p + unit(d);
            auto it = a.placements.find(q);
            if (it == a.placements.end()) continue;
            std::int32_t w = bond_strength(ts[t].side(d), ts[it->second].side(opposite(d)));
            if (w > 0) g.edges.push_back({index[p], index[q], w});
        }
    }
    return g;
}

// Minimum over all cuts of the total weight crossing the cut (Stoer-Wagner).
// Graphs with fewer than two vertices have no cut; that is reported as an
// empty optional (the infinite sentinel).
inline std::optional<std::int64_t> binding_strength(const BindingGraph& g) {
    const int n = static_cast<int>(g.vertices.size());
    if (n < 2) return std::nullopt;
    std::vector<std::vector<std::int64_t>> w(static_cast<std::size_t>(n),
                                             std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    for (const auto& e : g.edges) {
        w[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)] += e.weight;
        w[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.a)] += e.weight;
    }
    std::vector<int> active(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    while (active.size() > 1) {
        std::vector<std::int64_t> conn(static_cast<std::size_t>(n), 0);
        std::vector<char> added(static_cast<std::size_t>(n), 0);
        int prev = -1, last = -1;
        for (std::size_t step = 0; step < active.size(); ++step) {
            int pick = -1;
            for (int v : active)
                if (!added[static_cast<std::size_t>(v)] &&
                    (pick == -1 || conn[static_cast<std::size_t>(v)] > conn[static_cast<std::size_t>(pick)]))
                    pick = v;
            if (pick < 0) break;
            added[static_cast<std::size_t>(pick)] = 1;
            prev = last;
            last = pick;
            for (int v : active)
                if (!added[static_cast<std::size_t>(v)])
                    conn[static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(pick)][static_cast<std::size_t>(v)];
        }
        best = std::min(best, conn[static_cast<std::size_t>(last)] == 0 && active.size() > 1
                                  ? std::int64_t{0}
                                  : conn[static_cast<std::size_t>(last)]);
        // merge last into prev
        for (int v : active) {
            if (v == last || v == prev) continue;
            w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(last)][static_cast<std::size_t>(v)];
            w[static_cast<std::size_t>(v)][static_cast<std::size_t>(prev)] = w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
        }
        std::erase(active, last);
        if (best == 0) break;
    }
    return best;
}

inline std::optional<std::int64_t> binding_strength(const Assembly& a, const TileSet& ts) {
    return binding_strength(binding_graph(a, ts));
}

inline bool is_tau_stable(const Assembly& a, const TileSet& ts, int tau) {
    auto s = binding_strength(a, ts);
    if (!s) return true;  // 0 or 1 tiles
    return *s >= tau;
}

// Total strength with which tile type t would bind at empty position m.
inline std::int64_t attachment_strength(const Assembly& a, const TileSet& ts, Point m, int t) {
    std::int64_t sum = 0;
    for (Dir d : all_dirs) {
        auto it = a.placements.find(m + unit(d));
        if (it == a.placements.end()) continue;
        sum += bond_strength(ts[t].side(d), ts[it->second].side(opposite(d)));
    }
    return sum;
}

struct FrontierEntry {
    Point pos;
    int tile = 0;

    friend bool operator==(const FrontierEntry&, const FrontierEntry&) = default;
};

// Candidate tiles at one empty position, found through the per-side glue
// index rather than a scan over the whole tile set.
inline void frontier_at(const TAS& tas, const Assembly& a, Point m, std::vector<int>& out) {
    out.clear();
    if (a.occupied(m)) return;
    std::vector<int> cand;
    for (Dir d : all_dirs) {
        auto it = a.placements.find(m + unit(d));
        if (it == a.placements.end()) continue;
        const Glue& facing = tas.tiles[it->second].side(opposite(d));
        if (facing.color == 0 || facing.strength <= 0) continue;
        const auto& v = tas.tiles.tiles_with(d, facing);
        cand.insert(cand.end(), v.begin(), v.end());
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (int t : cand)
        if (attachment_strength(a, tas.tiles, m, t) >= tas.tau) out.push_back(t);
}

inline std::vector<FrontierEntry> frontier(const TAS& tas, const Assembly& a) {
    std::vector<FrontierEntry> out;
    PointSet seen;
    std::vector<int> cand;
    for (auto& [p, t] : a.placements) {
        for (Dir d : all_dirs) {
            Point m = p + unit(d);
            if (a.occupied(m) || !seen.insert(m).second) continue;
            frontier_at(tas, a, m, cand);
            for (int tt : cand) out.push_back({m, tt});
        }
    }
    return out;
}

inline bool in_frontier(const TAS& tas, const Assembly& a, Point m, int t) {
    return !a.occupied(m) && attachment_strength(a, tas.tiles, m, t) >= tas.tau;
}

inline Assembly add_tile(const Assembly& a, Point m, int t, const TAS& tas) {
    if (a.occupied(m)) throw Error(Errc::Occupied, "position already holds a tile");
    if (attachment_strength(a, tas.tiles, m, t) < tas.tau)
        throw Error(Errc::NotInFrontier, "attachment below temperature");
    Assembly out = a;
    out.placements.emplace(m, t);
    return out;
}

struct Step {
    Point pos;
    int tile = 0;
};

inline Assembly result(const std::vector<Step>& steps, const TAS& tas) {
    Assembly a = tas.seed;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        if (a.occupied(s.pos) ||
            attachment_strength(a, tas.tiles, s.pos, s.tile) < tas.tau)
            throw Error(Errc::IllegalStep, "step violates frontier semantics",
                        static_cast<std::int64_t>(i));
        a.placements.emplace(s.pos, s.tile);
    }
    return a;
}

inline bool is_terminal(const TAS& tas, const Assembly& a) {
    PointSet seen;
    std::vector<int> cand;
    for (auto& [p, t] : a.placements) {
        for (Dir d : all_dirs) {
            Point m = p + unit(d);
            if (a.occupied(m) || !seen.insert(m).second) continue;
            frontier_at(tas, a, m, cand);
            if (!cand.empty()) return false;
        }
    }
    return true;
}

}  // namespace fractile::tam
