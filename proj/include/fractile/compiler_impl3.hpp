#pragma once

// The hard-coded seed pattern (third stage of the fractal), the core arms,
// the compile() driver, and reachability pruning.

namespace fractile::compiler {
namespace gen {

inline std::string port_glue(bool vertical, std::int64_t m) {
    return std::string("T0:(0,0):") + (vertical ? "py" : "px") + ":" + std::to_string(m);
}

// interior of the seed pattern: cells of stage 2 with both coordinates >= 1,
// assembled from the port glues emitted by counters and the core arms
inline void emit_t0_interior(Emitter& em, const fractal::GeneratorSet& g) {
    auto t0 = fractal::stage(g, 2).points;
    const std::int64_t c2 = g.c * g.c;
    PointSet interior;
    for (Point p : t0)
        if (p.x >= 1 && p.y >= 1) interior.insert(p);
    if (interior.empty()) return;

    struct Edge {
        Dir d;
        std::string glue;
        int strength;
    };
    PointMap<std::vector<Edge>> in_edges, out_edges;

    std::vector<Point> queue;
    PointSet visited;
    for (Point p : sorted_points(interior)) {
        bool is_wport = p.x == 1;
        bool is_sport = p.y == 1;
        if (!is_wport && !is_sport) continue;
        if (p == Point{1, 1}) {
            in_edges[p].push_back({Dir::W, port_glue(true, 1), 1});
            in_edges[p].push_back({Dir::S, port_glue(false, 1), 1});
        } else if (is_wport && is_sport) {
            // (1, 1) is the only doubly ported cell
            in_edges[p].push_back({Dir::W, port_glue(true, p.y), 2});
        } else if (is_wport) {
            in_edges[p].push_back({Dir::W, port_glue(true, p.y), 2});
        } else {
            in_edges[p].push_back({Dir::S, port_glue(false, p.x), 2});
        }
        visited.insert(p);
        queue.push_back(p);
    }
    std::size_t head = 0;
    while (head < queue.size()) {
        Point p = queue[head++];
        for (Dir d : all_dirs) {
            Point q = p + unit(d);
            if (!interior.contains(q) || !visited.insert(q).second) continue;
            std::string glue = "T0:(0,0):e:x" + std::to_string(q.x) + "y" + std::to_string(q.y);
            out_edges[p].push_back({d, glue, 2});
            in_edges[q].push_back({opposite(d), glue, 2});
            queue.push_back(q);
        }
    }
    if (visited.size() != interior.size())
        throw Error(Errc::BadInput, "seed pattern interior not reachable from its ports");

    for (Point p : sorted_points(interior)) {
        Sides s;
        for (const Edge& e : in_edges[p]) s.g[static_cast<int>(e.d)] = {e.glue, e.strength};
        auto it = out_edges.find(p);
        if (it != out_edges.end())
            for (const Edge& e : it->second) s.g[static_cast<int>(e.d)] = {e.glue, e.strength};
        em.tile("T0:(0,0):cell:x" + std::to_string(p.x) + "y" + std::to_string(p.y), s,
                {"internal", {0, 0}, "pattern"});
    }
    (void)c2;
}

// the seed tile and the two core arms (the bottom row and left column of the
// seed pattern), ending in the launches of the scale-0 axis squares
inline void emit_core(Emitter& em, const fractal::GeneratorSet& g) {
    auto t0 = fractal::stage(g, 2).points;
    const std::int64_t c2 = g.c * g.c;
    {
        Sides s;
        s.g[static_cast<int>(Dir::E)] = {"core:(0,0):row:1", 2};
        s.g[static_cast<int>(Dir::N)] = {"core:(0,0):col:1", 2};
        em.tile("seed:(0,0):origin:o", s, {"seed", {0, 0}, "origin"});
    }
    for (std::int64_t x = 1; x < c2; ++x) {
        Sides s;
        s.g[static_cast<int>(Dir::W)] = {"core:(0,0):row:" + std::to_string(x), 2};
        if (x < c2 - 1)
            s.g[static_cast<int>(Dir::E)] = {"core:(0,0):row:" + std::to_string(x + 1), 2};
        else
            s.g[static_cast<int>(Dir::E)] = {"S:(1,0):c2e:score", 2};
        if (t0.contains(Point{x, 1}))
            s.g[static_cast<int>(Dir::N)] = {port_glue(false, x), x == 1 ? 1 : 2};
        em.tile("core:(0,0):rw:" + std::to_string(x), s, {"internal", {0, 0}, "core-row"});
    }
    for (std::int64_t y = 1; y < c2; ++y) {
        Sides s;
        s.g[static_cast<int>(Dir::S)] = {"core:(0,0):col:" + std::to_string(y), 2};
        if (y < c2 - 1)
            s.g[static_cast<int>(Dir::N)] = {"core:(0,0):col:" + std::to_string(y + 1), 2};
        else
            s.g[static_cast<int>(Dir::N)] = {"S:(0,1):c2e:score", 2};
        if (t0.contains(Point{1, y}))
            s.g[static_cast<int>(Dir::E)] = {port_glue(true, y), y == 1 ? 1 : 2};
        em.tile("core:(0,0):cl:" + std::to_string(y), s, {"internal", {0, 0}, "core-col"});
    }
}

// drop tiles that can never bind with total strength tau, conservatively
inline void prune_unreachable(tam::TAS& tas, std::map<std::string, TileProvenance>& prov,
                              const std::string& seed_name) {
    const auto& tiles = tas.tiles.tiles();
    std::vector<char> placeable(tiles.size(), 0);
    int seed = tas.tiles.find(seed_name);
    placeable[static_cast<std::size_t>(seed)] = 1;
    std::set<std::tuple<int, std::int32_t, std::int32_t>> emitted;  // (dir, color, strength)
    auto emit_sides = [&](const tam::TileType& t) {
        for (Dir d : all_dirs) {
            const tam::Glue& gl = t.side(d);
            if (gl.color != 0 && gl.strength > 0)
                emitted.insert({static_cast<int>(d), gl.color, gl.strength});
        }
    };
    emit_sides(tiles[static_cast<std::size_t>(seed)]);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < tiles.size(); ++i) {
            if (placeable[i]) continue;
            int total = 0;
            for (Dir d : all_dirs) {
                const tam::Glue& gl = tiles[i].side(d);
                if (gl.color == 0 || gl.strength <= 0) continue;
                if (emitted.contains({static_cast<int>(opposite(d)), gl.color, gl.strength}))
                    total += gl.strength;
            }
            if (total >= tas.tau) {
                placeable[i] = 1;
                emit_sides(tiles[i]);
                changed = true;
            }
        }
    }
    tam::TAS pruned;
    pruned.tau = tas.tau;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (!placeable[i]) {
            prov.erase(tiles[i].name);
            continue;
        }
        tam::TileType t;
        t.name = tiles[i].name;
        for (Dir d : all_dirs) {
            const tam::Glue& gl = tiles[i].side(d);
            t.side(d) = {pruned.tiles.intern_color(tas.tiles.color_name(gl.color)), gl.strength};
        }
        pruned.tiles.add_tile(std::move(t));
    }
    pruned.seed.placements.emplace(Point{0, 0}, pruned.tiles.find(seed_name));
    tas = std::move(pruned);
}

}  // namespace gen

inline CompiledTAS compile(const fractal::GeneratorSet& g) {
    if (!fractal::is_nice(g)) throw Error(Errc::NotNice, "compilation needs a nice generator");
    using namespace gen;
    CompiledTAS out;
    out.spanning_plan = plan(g);
    const SpanningPlan& sp = out.spanning_plan;
    out.tas.tau = 2;
    Emitter em(out.tas, out.provenance);

    emit_core(em, g);
    emit_t0_interior(em, g);

    auto planned_child = [&](Point parent, Point child) {
        return child != Point{0, 0} && g.contains(child) && sp.has(child) &&
               sp.u_in(child) == parent;
    };

    for (Point u : g.points) {
        if (u == Point{0, 0}) continue;
        GrowthClass cls = sp.growth_class(u);

        Frame sframe{Dir::N, Dir::E};
        Frame yframe{Dir::N, Dir::E};
        Frame xframe{Dir::E, Dir::N};
        int ydelta = 1, xdelta = 1;
        switch (cls) {
            case GrowthClass::ForwardVertical:
            case GrowthClass::AxisVertical: sframe = {Dir::N, Dir::E}; break;
            case GrowthClass::ForwardHorizontal:
            case GrowthClass::AxisHorizontal: sframe = {Dir::E, Dir::N}; break;
            case GrowthClass::ReverseVertical:
                sframe = {Dir::S, Dir::E};
                yframe = {Dir::S, Dir::E};
                ydelta = -1;
                break;
            case GrowthClass::ReverseHorizontal:
                sframe = {Dir::W, Dir::N};
                xframe = {Dir::W, Dir::N};
                xdelta = -1;
                break;
        }

        CounterSpec ys;
        ys.g = &g;
        ys.comp = "Y";
        ys.type = u;
        ys.seeder = ydelta > 0 ? u : sp.u_in(u);
        ys.frame = yframe;
        ys.delta = ydelta;
        ys.vertical = true;
        ys.attached_entry = u.y == 0;
        if (ydelta < 0) {
            ys.end = EndKind::SeedReverseS;
        } else if (planned_child(u, u + Point{0, 1})) {
            ys.end = EndKind::Case1;
            ys.case1_child = u + Point{0, 1};
        } else if (u == Point{0, g.c - 1}) {
            ys.end = EndKind::Case2;
        } else {
            ys.end = EndKind::Terminal;
        }
        CounterGen(em, ys).run();

        CounterSpec xs;
        xs.g = &g;
        xs.comp = "X";
        xs.type = u;
        xs.seeder = xdelta > 0 ? u : sp.u_in(u);
        xs.frame = xframe;
        xs.delta = xdelta;
        xs.vertical = false;
        xs.attached_entry = u.x == 0;
        if (xdelta < 0) {
            xs.end = EndKind::SeedReverseS;
        } else if (planned_child(u, u + Point{1, 0})) {
            xs.end = EndKind::Case1;
            xs.case1_child = u + Point{1, 0};
        } else if (u == Point{g.c - 1, 0}) {
            xs.end = EndKind::Case2;
        } else {
            xs.end = EndKind::Terminal;
        }
        CounterGen(em, xs).run();

        SquareSpec ss;
        ss.g = &g;
        ss.type = u;
        ss.cls = cls;
        ss.frame = sframe;
        ss.case2 = cls == GrowthClass::AxisVertical || cls == GrowthClass::AxisHorizontal;
        switch (cls) {
            case GrowthClass::ForwardVertical:
                ss.input_comp = "Y";
                ss.input_type = sp.u_in(u);
                break;
            case GrowthClass::AxisVertical:
                ss.input_comp = "Y";
                ss.input_type = Point{0, g.c - 1};
                break;
            case GrowthClass::ForwardHorizontal:
                ss.input_comp = "X";
                ss.input_type = sp.u_in(u);
                break;
            case GrowthClass::AxisHorizontal:
                ss.input_comp = "X";
                ss.input_type = Point{g.c - 1, 0};
                break;
            case GrowthClass::ReverseVertical:
                ss.input_comp = "Y";
                ss.input_type = u;
                break;
            case GrowthClass::ReverseHorizontal:
                ss.input_comp = "X";
                ss.input_type = u;
                break;
        }
        ss.emit_y = cls != GrowthClass::ReverseVertical;
        ss.emit_x = cls != GrowthClass::ReverseHorizontal;
        ss.down_child = u + Point{0, -1};
        ss.child_down = planned_child(u, ss.down_child);
        ss.left_child = u + Point{-1, 0};
        ss.child_left = planned_child(u, ss.left_child);
        SquareGen(em, ss).run();
    }

    prune_unreachable(out.tas, out.provenance, "seed:(0,0):origin:o");
    // tiles on the band edges form the fiber lines of their blocks
    for (auto& [name, p] : out.provenance)
        if (p.role.rfind("fiber-edge", 0) == 0) p.component = "fiber-edge";
    return out;
}

}  // namespace fractile::compiler
