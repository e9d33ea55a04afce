#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "fractile/error.hpp"
#include "fractile/geom.hpp"
#include "fractile/tam.hpp"
#include "fractile/tiles.hpp"

namespace fractile::engine {

using tam::Assembly;
using tam::FrontierEntry;
using tam::Step;
using tam::TAS;

enum class PolicyKind { Lexicographic, FifoInsertion, SeededRandom };

struct Policy {
    PolicyKind kind = PolicyKind::Lexicographic;
    std::uint64_t seed = 0;
};

enum class RunStatus { Terminal, WindowSaturated, BudgetExhausted };

inline const char* status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Terminal: return "terminal";
        case RunStatus::WindowSaturated: return "window-saturated";
        case RunStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

struct RunResult {
    Assembly assembly;
    RunStatus status = RunStatus::Terminal;
    std::vector<Step> steps;
};

// Incrementally maintained simulation state. Attachment strengths only grow
// as tiles are added, so a frontier entry can disappear only when its
// position becomes occupied; that makes incremental maintenance a local
// recompute at the placed cell and its four neighbors.
class Sim {
  public:
    explicit Sim(const TAS& tas) : tas_(tas), assembly_(tas.seed) {
        if (!tam::is_tau_stable(assembly_, tas_.tiles, tas_.tau))
            throw Error(Errc::SeedUnstable, "seed assembly is not tau-stable");
        for (auto& [p, t] : assembly_.placements)
            for (Dir d : all_dirs) refresh(p + unit(d));
    }

    const TAS& tas() const { return tas_; }
    const Assembly& assembly() const { return assembly_; }

    // Every (position, tile) currently attachable. Fresh vector per call.
    std::vector<FrontierEntry> frontier_snapshot() const {
        std::vector<FrontierEntry> out;
        for (auto& [p, ts] : frontier_)
            for (int t : ts) out.push_back({p, t});
        return out;
    }

    bool frontier_empty() const { return frontier_.empty(); }

    bool frontier_empty_in(const Rect& w) const {
        for (auto& [p, ts] : frontier_)
            if (w.contains(p) && !ts.empty()) return false;
        return true;
    }

    const PointMap<std::vector<int>>& frontier_map() const { return frontier_; }

    bool legal(Point m, int t) const {
        auto it = frontier_.find(m);
        if (it == frontier_.end()) return false;
        return std::find(it->second.begin(), it->second.end(), t) != it->second.end();
    }

    // changed() lists positions whose candidate set was rebuilt by the last
    // place(); policy drivers use it to update their selection structures.
    const std::vector<Point>& changed() const { return changed_; }

    void place(Point m, int t) {
        if (!legal(m, t)) throw Error(Errc::NotInFrontier, "illegal placement");
        assembly_.placements.emplace(m, t);
        changed_.clear();
        frontier_.erase(m);
        changed_.push_back(m);
        for (Dir d : all_dirs) {
            Point q = m + unit(d);
            refresh(q);
            changed_.push_back(q);
        }
    }

  private:
    void refresh(Point q) {
        if (assembly_.occupied(q)) { frontier_.erase(q); return; }
        tam::frontier_at(tas_, assembly_, q, scratch_);
        if (scratch_.empty())
            frontier_.erase(q);
        else
            frontier_[q] = scratch_;
    }

    const TAS& tas_;
    Assembly assembly_;
    PointMap<std::vector<int>> frontier_;
    std::vector<int> scratch_;
    std::vector<Point> changed_;
};

namespace detail {

using LexKey = std::tuple<std::int64_t, std::int64_t, int>;  // (y, x, tile)

inline LexKey lex_key(const FrontierEntry& e) { return {e.pos.y, e.pos.x, e.tile}; }

class Selector {
  public:
    Selector(const Policy& p, const Rect& window) : policy_(p), window_(window), rng_(p.seed) {}

    void sync(const Sim& sim) {
        for (Point q : sim.changed()) update_position(sim, q);
    }

    void prime(const Sim& sim) {
        for (auto& [p, ts] : sim.frontier_map()) update_position_list(p, ts);
    }

    std::optional<FrontierEntry> next(const Sim& sim) {
        switch (policy_.kind) {
            case PolicyKind::Lexicographic: {
                while (!lex_.empty()) {
                    auto [y, x, t] = *lex_.begin();
                    FrontierEntry e{{x, y}, t};
                    if (sim.legal(e.pos, e.tile)) return e;
                    lex_.erase(lex_.begin());
                }
                return std::nullopt;
            }
            case PolicyKind::FifoInsertion: {
                while (!fifo_.empty()) {
                    FrontierEntry e = fifo_.front();
                    if (sim.legal(e.pos, e.tile)) return e;
                    fifo_.pop_front();
                }
                return std::nullopt;
            }
            case PolicyKind::SeededRandom: {
                while (!bag_.empty()) {
                    std::uniform_int_distribution<std::size_t> pick(0, bag_.size() - 1);
                    std::size_t i = pick(rng_);
                    FrontierEntry e = bag_[i];
                    if (sim.legal(e.pos, e.tile)) return e;
                    bag_[i] = bag_.back();
                    bag_.pop_back();
                }
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

  private:
    void update_position(const Sim& sim, Point q) {
        auto it = sim.frontier_map().find(q);
        if (it == sim.frontier_map().end()) return;
        update_position_list(q, it->second);
    }

    void update_position_list(Point q, const std::vector<int>& tiles) {
        if (!window_.contains(q)) return;
        auto& known = seen_[q];
        for (int t : tiles) {
            if (std::find(known.begin(), known.end(), t) != known.end()) continue;
            known.push_back(t);
            FrontierEntry e{q, t};
            switch (policy_.kind) {
                case PolicyKind::Lexicographic: lex_.insert(lex_key(e)); break;
                case PolicyKind::FifoInsertion: fifo_.push_back(e); break;
                case PolicyKind::SeededRandom: bag_.push_back(e); break;
            }
        }
    }

    Policy policy_;
    Rect window_;
    std::mt19937_64 rng_;
    std::set<LexKey> lex_;
    std::deque<FrontierEntry> fifo_;
    std::vector<FrontierEntry> bag_;
    PointMap<std::vector<int>> seen_;
};

}  // namespace detail

inline constexpr std::int64_t kDefaultMaxTiles = 1'000'000;

inline RunResult run(const TAS& tas, const Policy& policy, const Rect& window,
                     std::int64_t max_tiles = kDefaultMaxTiles, bool record_steps = true) {
    Sim sim(tas);
    detail::Selector sel(policy, window);
    sel.prime(sim);
    RunResult out;
    std::int64_t placed = 0;
    while (true) {
        auto e = sel.next(sim);
        if (!e) {
            out.status = sim.frontier_empty() ? RunStatus::Terminal : RunStatus::WindowSaturated;
            break;
        }
        if (placed >= max_tiles) {
            out.status = RunStatus::BudgetExhausted;
            break;
        }
        sim.place(e->pos, e->tile);
        sel.sync(sim);
        if (record_steps) out.steps.push_back({e->pos, e->tile});
        ++placed;
    }
    out.assembly = sim.assembly();
    return out;
}

inline Assembly replay(const TAS& tas, const std::vector<Step>& steps) {
    return tam::result(steps, tas);
}

enum class Verdict { Pass, Fail, Inconclusive };

struct CheckReport {
    Verdict verdict = Verdict::Fail;
    RunStatus status = RunStatus::Terminal;
    std::vector<Point> missing;
    std::vector<Point> extra;
    std::size_t tiles_placed = 0;

    bool passed() const { return verdict == Verdict::Pass; }
};

inline CheckReport strict_window_check(const TAS& tas, const PointSet& target, const Rect& window,
                                       const Policy& policy,
                                       std::int64_t max_tiles = kDefaultMaxTiles) {
    RunResult r = run(tas, policy, window, max_tiles, false);
    CheckReport rep;
    rep.status = r.status;
    rep.tiles_placed = r.assembly.size();
    if (r.status == RunStatus::BudgetExhausted) {
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }
    for (Point p : target)
        if (window.contains(p) && !r.assembly.occupied(p)) rep.missing.push_back(p);
    for (auto& [p, t] : r.assembly.placements)
        if (window.contains(p) && !target.contains(p)) rep.extra.push_back(p);
    std::sort(rep.missing.begin(), rep.missing.end());
    std::sort(rep.extra.begin(), rep.extra.end());
    rep.verdict = rep.missing.empty() && rep.extra.empty() ? Verdict::Pass : Verdict::Fail;
    return rep;
}

inline CheckReport weak_window_check(const TAS& tas, const std::vector<std::string>& black_tiles,
                                     const PointSet& target, const Rect& window,
                                     const Policy& policy,
                                     std::int64_t max_tiles = kDefaultMaxTiles) {
    std::vector<char> black(tas.tiles.size(), 0);
    for (const auto& name : black_tiles) {
        int id = tas.tiles.find(name);
        if (id < 0) throw Error(Errc::BadInput, "unknown black tile " + name);
        black[static_cast<std::size_t>(id)] = 1;
    }
    RunResult r = run(tas, policy, window, max_tiles, false);
    CheckReport rep;
    rep.status = r.status;
    rep.tiles_placed = r.assembly.size();
    if (r.status == RunStatus::BudgetExhausted) {
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }
    for (Point p : target)
        if (window.contains(p)) {
            int t = r.assembly.at(p);
            if (t < 0 || !black[static_cast<std::size_t>(t)]) rep.missing.push_back(p);
        }
    for (auto& [p, t] : r.assembly.placements)
        if (window.contains(p) && black[static_cast<std::size_t>(t)] && !target.contains(p))
            rep.extra.push_back(p);
    std::sort(rep.missing.begin(), rep.missing.end());
    std::sort(rep.extra.begin(), rep.extra.end());
    rep.verdict = rep.missing.empty() && rep.extra.empty() ? Verdict::Pass : Verdict::Fail;
    return rep;
}

}  // namespace fractile::engine
