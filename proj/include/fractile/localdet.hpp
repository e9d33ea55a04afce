#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fractile/error.hpp"
#include "fractile/geom.hpp"
#include "fractile/tam.hpp"

namespace fractile::localdet {

using tam::Assembly;
using tam::Step;
using tam::TAS;

using DirSet = std::array<bool, 4>;  // indexed by Dir

enum class Cond3 { Terminal, WindowSaturated, Open };

inline const char* cond3_name(Cond3 c) {
    switch (c) {
        case Cond3::Terminal: return "terminal";
        case Cond3::WindowSaturated: return "window-saturated";
        case Cond3::Open: return "open";
    }
    return "?";
}

struct Cond1Violation {
    Point pos;
    std::int64_t total_strength = 0;
};

struct Cond2Violation {
    Point pos;
    std::string competing_tile;
};

struct Report {
    PointMap<DirSet> in_sets;
    PointMap<DirSet> out_sets;
    std::vector<Cond1Violation> cond1_violations;
    std::vector<Cond2Violation> cond2_violations;
    Cond3 cond3_status = Cond3::Open;
    // cond2 does one frontier membership test per (placed point, other tile)
    std::size_t cond2_ops = 0;

    bool conds12_clean() const { return cond1_violations.empty() && cond2_violations.empty(); }
};

namespace detail {

struct Replayed {
    Assembly result;
    PointMap<std::int64_t> index;  // 0 for seed points, k for step k
};

inline Replayed replay_indexed(const TAS& tas, const std::vector<Step>& steps) {
    Replayed r;
    r.result = tas.seed;
    for (auto& [p, t] : tas.seed.placements) r.index.emplace(p, 0);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        if (r.result.occupied(s.pos) ||
            tam::attachment_strength(r.result, tas.tiles, s.pos, s.tile) < tas.tau)
            throw Error(Errc::IllegalStep, "step violates frontier semantics",
                        static_cast<std::int64_t>(i));
        r.result.placements.emplace(s.pos, s.tile);
        r.index.emplace(s.pos, static_cast<std::int64_t>(i) + 1);
    }
    return r;
}

}  // namespace detail

// IN(m): sides over which m's tile bound at the instant it was placed.
// OUT(m): sides over which m later fed other tiles: u in OUT(m) iff
// -u in IN(m + u).
inline Report in_out_sets(const TAS& tas, const std::vector<Step>& steps) {
    auto rep = detail::replay_indexed(tas, steps);
    Report out;
    for (auto& [p, t] : rep.result.placements) {
        DirSet in{};
        std::int64_t my_index = rep.index.at(p);
        if (my_index > 0) {
            for (Dir d : all_dirs) {
                Point q = p + unit(d);
                auto it = rep.result.placements.find(q);
                if (it == rep.result.placements.end()) continue;
                if (rep.index.at(q) >= my_index) continue;
                if (tam::bond_strength(tas.tiles[t].side(d),
                                       tas.tiles[it->second].side(opposite(d))) > 0)
                    in[static_cast<std::size_t>(d)] = true;
            }
        }
        out.in_sets.emplace(p, in);
    }
    for (auto& [p, in] : out.in_sets) {
        DirSet o{};
        for (Dir d : all_dirs) {
            Point q = p + unit(d);
            auto it = out.in_sets.find(q);
            if (it == out.in_sets.end()) continue;
            if (it->second[static_cast<std::size_t>(opposite(d))]) o[static_cast<std::size_t>(d)] = true;
        }
        out.out_sets.emplace(p, o);
    }
    return out;
}

// The three conditions:
//   1. every non-seed tile binds with total strength exactly tau at its
//      placement instant;
//   2. with m and its OUT-neighbors removed from the result, no other tile
//      type fits at m;
//   3. the result is terminal, or windowed, has no frontier inside `window`.
inline Report check_local_determinism(const TAS& tas, const std::vector<Step>& steps,
                                      const Rect& window) {
    auto rep = detail::replay_indexed(tas, steps);
    Report out = in_out_sets(tas, steps);

    // condition 1, evaluated against the assembly as it stood at placement
    Assembly partial = tas.seed;
    for (const auto& s : steps) {
        std::int64_t total = tam::attachment_strength(partial, tas.tiles, s.pos, s.tile);
        if (total != tas.tau) out.cond1_violations.push_back({s.pos, total});
        partial.placements.emplace(s.pos, s.tile);
    }

    // condition 2; removals are undone after each point
    Assembly scratch = rep.result;
    for (auto& [m, t] : rep.result.placements) {
        if (rep.index.at(m) == 0) continue;
        std::vector<std::pair<Point, int>> removed;
        removed.emplace_back(m, t);
        const DirSet& o = out.out_sets.at(m);
        for (Dir d : all_dirs) {
            if (!o[static_cast<std::size_t>(d)]) continue;
            Point q = m + unit(d);
            auto it = scratch.placements.find(q);
            if (it != scratch.placements.end()) removed.emplace_back(q, it->second);
        }
        for (auto& [q, qt] : removed) scratch.placements.erase(q);
        for (int other = 0; other < static_cast<int>(tas.tiles.size()); ++other) {
            if (other == t) continue;
            ++out.cond2_ops;
            if (tam::attachment_strength(scratch, tas.tiles, m, other) >= tas.tau)
                out.cond2_violations.push_back({m, tas.tiles[other].name});
        }
        for (auto& [q, qt] : removed) scratch.placements.emplace(q, qt);
    }

    // condition 3
    bool any_frontier = !tam::is_terminal(tas, rep.result);
    if (!any_frontier)
        out.cond3_status = Cond3::Terminal;
    else {
        bool inside = false;
        PointSet seen;
        std::vector<int> cand;
        for (auto& [p, t] : rep.result.placements) {
            for (Dir d : all_dirs) {
                Point m = p + unit(d);
                if (!window.contains(m) || rep.result.occupied(m) || !seen.insert(m).second) continue;
                tam::frontier_at(tas, rep.result, m, cand);
                if (!cand.empty()) { inside = true; break; }
            }
            if (inside) break;
        }
        out.cond3_status = inside ? Cond3::Open : Cond3::WindowSaturated;
    }
    return out;
}

}  // namespace fractile::localdet
