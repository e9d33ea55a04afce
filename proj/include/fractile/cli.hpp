#pragma once

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fractile/analysis.hpp"
#include "fractile/compiler.hpp"
#include "fractile/engine.hpp"
#include "fractile/fibered.hpp"
#include "fractile/fractal.hpp"
#include "fractile/io.hpp"
#include "fractile/localdet.hpp"
#include "fractile/render.hpp"

namespace fractile::cli {

// exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 resource limit
inline constexpr int kOk = 0;
inline constexpr int kVerifyFail = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kResource = 3;

namespace detail {

inline int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case Errc::ResourceLimit: return kResource;
        default: return kBadInput;
    }
}

inline void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        io::write_file(out_path, content);
}

inline fractal::GeneratorSet load_def(const std::string& path) {
    return io::generator_from_json(io::json::parse(io::read_file(path)));
}

inline io::TileSetFile load_tiles(const std::string& path) {
    return io::tileset_from_json(io::json::parse(io::read_file(path)));
}

inline Rect parse_window(const std::string& spec) {
    Rect w;
    long long a, b, c, d;
    if (std::sscanf(spec.c_str(), "%lld,%lld,%lld,%lld", &a, &b, &c, &d) != 4)
        throw Error(Errc::BadInput, "window must be X0,Y0,X1,Y1");
    w = {a, b, c, d};
    if (w.empty()) throw Error(Errc::BadInput, "window is empty");
    return w;
}

inline engine::Policy parse_policy(const std::string& name, std::uint64_t seed) {
    engine::Policy p;
    p.seed = seed;
    if (name == "lex")
        p.kind = engine::PolicyKind::Lexicographic;
    else if (name == "fifo")
        p.kind = engine::PolicyKind::FifoInsertion;
    else if (name == "random")
        p.kind = engine::PolicyKind::SeededRandom;
    else
        throw Error(Errc::BadInput, "unknown policy " + name);
    return p;
}

inline io::json dimension_json(const analysis::DimensionEstimate& est) {
    io::json samples = io::json::array();
    for (auto& s : est.samples)
        samples.push_back({{"n", s.n}, {"count", s.count}, {"ratio", s.ratio}});
    io::json j{{"samples", samples}, {"estimate", est.estimate}};
    if (est.target) j["target"] = *est.target;
    return j;
}

inline io::json report_json(const engine::CheckReport& rep) {
    io::json miss = io::json::array(), extra = io::json::array();
    for (Point p : rep.missing) miss.push_back({p.x, p.y});
    for (Point p : rep.extra) extra.push_back({p.x, p.y});
    return io::json{{"verdict", rep.verdict == engine::Verdict::Pass    ? "pass"
                                : rep.verdict == engine::Verdict::Fail ? "fail"
                                                                       : "inconclusive"},
                    {"status", engine::status_name(rep.status)},
                    {"tiles_placed", rep.tiles_placed},
                    {"missing", miss},
                    {"extra", extra}};
}

}  // namespace detail

inline int dispatch(const std::vector<std::string>& argv) {
    using namespace detail;
    CLI::App app{"workbench for algorithmic tile self-assembly of fibered fractals"};
    app.require_subcommand(1);

    struct Opts {
        std::string def_path, tiles_path, out_path, format = "text";
        std::string window_spec, policy = "lex";
        std::int64_t stage = 0;
        std::uint64_t seed = 0;
        std::int64_t max_tiles = engine::kDefaultMaxTiles;
        int threads = 1;  // accepted for interface stability; never affects results
        std::string steps_out, black_file, points_file, dump_file, path_file, set_kind = "tf";
        std::vector<std::string> black;
        std::int64_t ball_n = 1 << 10;
        std::int64_t lb_m = 5;
    } o;
    int rc = kOk;

    auto add_common = [&](CLI::App* cmd, bool tiles, bool def) {
        if (def) cmd->add_option("--def", o.def_path, "fractal definition (JSON)");
        if (tiles) cmd->add_option("--tiles", o.tiles_path, "tile set (JSON)");
        cmd->add_option("--out", o.out_path, "output path (default: stdout)");
        cmd->add_option("--format", o.format, "output format");
        cmd->add_option("--threads", o.threads, "worker threads (wall clock only)");
    };
    auto add_run_opts = [&](CLI::App* cmd) {
        cmd->add_option("--policy", o.policy, "lex, fifo, or random");
        cmd->add_option("--seed", o.seed, "policy seed");
        cmd->add_option("--max-tiles", o.max_tiles, "tile budget");
    };

    // ---- fractal ----
    auto* fr = app.add_subcommand("fractal", "generator sets and stages");
    fr->require_subcommand(1);
    auto* frv = fr->add_subcommand("validate", "validate and canonicalize a definition");
    add_common(frv, false, true);
    frv->callback([&] {
        auto g = load_def(o.def_path);
        emit(o.out_path, io::generator_to_json(g).dump(2) + "\n");
    });
    auto* frs = fr->add_subcommand("stage", "materialize a stage of the fractal");
    add_common(frs, false, true);
    frs->add_option("--i,--stage", o.stage, "stage index")->required();
    frs->callback([&] {
        if (o.stage < 0) throw Error(Errc::BadInput, "stage index must be nonnegative");
        auto g = load_def(o.def_path);
        emit(o.out_path, io::points_to_text(fractal::stage(g, o.stage).points));
    });
    auto* frc = fr->add_subcommand("classify", "niceness and pinch-point class");
    add_common(frc, false, true);
    frc->callback([&] {
        auto g = load_def(o.def_path);
        auto cls = fractal::is_pinch_point(g);
        std::string failed;
        for (int k : cls.failed_conditions)
            failed += (failed.empty() ? "" : ",") + std::to_string(k);
        emit(o.out_path, "nice=" + std::string(cls.nice ? "true" : "false") +
                             " pinch_point=" + (cls.pinch_point ? "true" : "false") +
                             " failed_conditions=[" + failed + "]\n");
    });

    // ---- fiber ----
    auto* fb = app.add_subcommand("fiber", "fibered stages and metrics");
    fb->require_subcommand(1);
    auto* fbs = fb->add_subcommand("stage", "materialize a fibered stage");
    add_common(fbs, false, true);
    fbs->add_option("--i,--stage", o.stage, "stage index")->required();
    fbs->add_option("--set", o.set_kind, "t, f, or tf (the straight-edged block)");
    fbs->callback([&] {
        auto g = load_def(o.def_path);
        auto st = fibered::fiber_stage(g, o.stage);
        PointSet pts;
        if (o.set_kind == "t" || o.set_kind == "tf") pts.insert(st.T.begin(), st.T.end());
        if (o.set_kind == "f" || o.set_kind == "tf") pts.insert(st.F.begin(), st.F.end());
        if (o.set_kind != "t" && o.set_kind != "f" && o.set_kind != "tf")
            throw Error(Errc::BadInput, "set must be t, f, or tf");
        emit(o.out_path, io::points_to_text(pts));
    });
    auto* fbm = fb->add_subcommand("metrics", "edge/fiber/stage counts vs recurrences");
    add_common(fbm, false, true);
    fbm->add_option("--i,--stage", o.stage, "stage index")->required();
    fbm->callback([&] {
        auto g = load_def(o.def_path);
        auto m = fibered::metrics(g, o.stage);
        io::json disc = io::json::array();
        for (auto& d : m.discrepancies)
            disc.push_back(
                {{"name", d.name}, {"measured", d.measured}, {"recurrence", d.recurrence}});
        io::json j{{"i", m.i},
                   {"l_measured", m.l_measured},
                   {"f_measured", m.f_measured},
                   {"t_measured", m.t_measured},
                   {"l_rec", m.l_rec},
                   {"f_rec", m.f_rec},
                   {"t_rec", m.t_rec},
                   {"t_rec_excl_origin", m.t_rec_excl_origin},
                   {"discrepancies", disc}};
        emit(o.out_path, j.dump(2) + "\n");
    });

    // ---- compile ----
    auto* co = app.add_subcommand("compile", "emit the temperature-2 tile system");
    add_common(co, false, true);
    co->callback([&] {
        auto g = load_def(o.def_path);
        auto ct = compiler::compile(g);
        io::TileSetFile f;
        f.tiles = ct.tas.tiles;
        f.tau = 2;
        f.seed_tile = "seed:(0,0):origin:o";
        for (auto& [name, p] : ct.provenance) f.provenance[name] = {p.component, p.type, p.role};
        emit(o.out_path, io::tileset_to_json(f).dump() + "\n");
        std::cerr << "tile types: " << ct.tas.tiles.size() << "\n";
    });

    // ---- simulate ----
    auto* si = app.add_subcommand("simulate", "run self-assembly in a window");
    add_common(si, true, false);
    si->add_option("--window", o.window_spec, "X0,Y0,X1,Y1")->required();
    add_run_opts(si);
    si->add_option("--steps-out", o.steps_out, "write the step log here");
    si->callback([&] {
        auto f = load_tiles(o.tiles_path);
        auto tas = io::tas_from_file(f);
        auto r = engine::run(tas, parse_policy(o.policy, o.seed), parse_window(o.window_spec),
                             o.max_tiles);
        emit(o.out_path, io::assembly_to_text(r.assembly, tas.tiles));
        if (!o.steps_out.empty())
            io::write_file(o.steps_out, io::steps_to_text(r.steps, tas.tiles));
        std::cerr << "status: " << engine::status_name(r.status) << ", placed "
                  << r.assembly.size() << "\n";
        if (r.status == engine::RunStatus::BudgetExhausted) rc = kResource;
    });

    // ---- verify ----
    auto* ve = app.add_subcommand("verify", "check assemblies against fibered geometry");
    ve->require_subcommand(1);
    for (bool weak : {false, true}) {
        auto* sub = ve->add_subcommand(weak ? "weak" : "strict",
                                       weak ? "weak self-assembly check"
                                            : "strict self-assembly check");
        add_common(sub, true, true);
        sub->add_option("--stage", o.stage, "fibered stage whose bounding box is the window")
            ->required();
        sub->add_option("--window", o.window_spec, "override window X0,Y0,X1,Y1");
        add_run_opts(sub);
        if (weak) {
            sub->add_option("--black", o.black, "black tile names (repeatable)");
            sub->add_option("--black-file", o.black_file, "file with one black tile name per line");
        }
        sub->callback([&, weak] {
            auto g = load_def(o.def_path);
            auto f = load_tiles(o.tiles_path);
            auto tas = io::tas_from_file(f);
            fibered::Model model(g);
            Rect w = o.window_spec.empty() ? bounding_box(model.fiber_stage(o.stage).T)
                                           : parse_window(o.window_spec);
            PointSet target = model.window(w);
            engine::CheckReport rep;
            if (weak) {
                std::vector<std::string> black = o.black;
                if (!o.black_file.empty()) {
                    std::istringstream is(io::read_file(o.black_file));
                    std::string line;
                    while (std::getline(is, line))
                        if (!line.empty()) black.push_back(line);
                }
                rep = engine::weak_window_check(tas, black, target, w,
                                                parse_policy(o.policy, o.seed), o.max_tiles);
            }
            else
                rep = engine::strict_window_check(tas, target, w, parse_policy(o.policy, o.seed),
                                                  o.max_tiles);
            emit(o.out_path, report_json(rep).dump(2) + "\n");
            rc = rep.verdict == engine::Verdict::Pass           ? kOk
                 : rep.verdict == engine::Verdict::Inconclusive ? kResource
                                                                : kVerifyFail;
        });
    }

    // ---- localdet ----
    auto* ld = app.add_subcommand("localdet", "local determinism of a recorded run");
    add_common(ld, true, false);
    ld->add_option("--window", o.window_spec, "X0,Y0,X1,Y1")->required();
    add_run_opts(ld);
    ld->callback([&] {
        auto f = load_tiles(o.tiles_path);
        auto tas = io::tas_from_file(f);
        Rect w = parse_window(o.window_spec);
        auto run = engine::run(tas, parse_policy(o.policy, o.seed), w, o.max_tiles);
        auto rep = localdet::check_local_determinism(tas, run.steps, w);
        io::json c1 = io::json::array(), c2 = io::json::array();
        for (auto& v : rep.cond1_violations)
            c1.push_back({{"pos", {v.pos.x, v.pos.y}}, {"strength", v.total_strength}});
        for (auto& v : rep.cond2_violations)
            c2.push_back({{"pos", {v.pos.x, v.pos.y}}, {"tile", v.competing_tile}});
        io::json j{{"cond1_violations", c1},
                   {"cond2_violations", c2},
                   {"cond3", localdet::cond3_name(rep.cond3_status)},
                   {"cond2_ops", rep.cond2_ops}};
        emit(o.out_path, j.dump(2) + "\n");
        if (!rep.conds12_clean() || rep.cond3_status == localdet::Cond3::Open) rc = kVerifyFail;
    });

    // ---- analyze ----
    auto* an = app.add_subcommand("analyze", "dimension estimates and lower bounds");
    an->require_subcommand(1);
    auto* anz = an->add_subcommand("zeta", "zeta-dimension estimate of the fractal");
    add_common(anz, false, true);
    anz->add_option("--n", o.ball_n, "largest taxicab radius");
    anz->callback([&] {
        auto g = load_def(o.def_path);
        std::vector<std::int64_t> ns;
        for (std::int64_t k = o.ball_n; k >= 2 && ns.size() < 5; k /= g.c) ns.push_back(k);
        auto est = analysis::zeta_dimension_estimate(
            [&](Point p) { return analysis::digit_membership(g, p); }, ns);
        emit(o.out_path, dimension_json(est).dump(2) + "\n");
    });
    auto* and_ = an->add_subcommand("dimeq", "dimension of the fractal vs its fibered version");
    add_common(and_, false, true);
    and_->add_option("--n", o.ball_n, "taxicab radius");
    and_->callback([&] {
        auto g = load_def(o.def_path);
        auto eq = analysis::dim_equality_check(g, o.ball_n);
        io::json j{{"plain", dimension_json(eq.plain)},
                   {"fibered", dimension_json(eq.fibered)},
                   {"difference", eq.difference}};
        emit(o.out_path, j.dump(2) + "\n");
    });
    auto* anl = an->add_subcommand("lowerbound", "tile-type lower bound from rooted subgraphs");
    add_common(anl, false, true);
    anl->add_option("--m", o.lb_m, "number of subgraphs");
    anl->callback([&] {
        auto g = load_def(o.def_path);
        auto lb = analysis::subgraph_lower_bound(g, o.lb_m);
        io::json subs = io::json::array();
        for (auto& s : lb.subgraphs) {
            io::json pts = io::json::array();
            for (Point p : s.vertices) pts.push_back({p.x, p.y});
            subs.push_back({{"root", {s.root.x, s.root.y}}, {"vertices", pts}});
        }
        emit(o.out_path, io::json{{"count", lb.count}, {"subgraphs", subs}}.dump(2) + "\n");
    });
    auto* anp = an->add_subcommand("pathtas", "uniquified temperature-1 path system");
    add_common(anp, false, false);
    anp->add_option("--path", o.path_file, "path points, one 'x y' per line in order")->required();
    anp->callback([&] {
        std::vector<Point> path;
        std::istringstream is(io::read_file(o.path_file));
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            Point p;
            std::istringstream ls(line);
            if (!(ls >> p.x >> p.y)) throw Error(Errc::BadInput, "bad path line: " + line);
            path.push_back(p);
        }
        auto tas = analysis::path_to_tas(path);
        io::TileSetFile f;
        f.tiles = tas.tiles;
        f.tau = 1;
        f.seed_tile = tas.tiles[0].name;
        emit(o.out_path, io::tileset_to_json(f).dump() + "\n");
    });

    // ---- render ----
    auto* re = app.add_subcommand("render", "draw point sets or assemblies");
    add_common(re, true, true);
    re->add_option("--stage", o.stage, "fibered stage to draw (with --def)");
    re->add_option("--points", o.points_file, "point dump to draw");
    re->add_option("--dump", o.dump_file, "assembly dump to draw (with --tiles)");
    re->add_option("--window", o.window_spec, "X0,Y0,X1,Y1 (default: bounding box)");
    re->callback([&] {
        std::vector<render::Cell> cells;
        Rect w{0, 0, 0, 0};
        if (!o.points_file.empty()) {
            PointSet pts = io::points_from_text(io::read_file(o.points_file));
            for (Point p : pts) cells.push_back({p, 0});
            if (!pts.empty()) w = bounding_box(pts);
        } else if (!o.dump_file.empty()) {
            auto f = load_tiles(o.tiles_path);
            auto a = io::assembly_from_text(io::read_file(o.dump_file), f.tiles);
            PointSet pts;
            for (auto& [p, t] : a.placements) {
                int cls = 0;
                auto it = f.provenance.find(f.tiles[t].name);
                if (it != f.provenance.end()) {
                    const std::string& comp = it->second.component;
                    cls = comp == "seed"         ? 1
                          : comp == "S"          ? 2
                          : comp == "Y"          ? 3
                          : comp == "X"          ? 4
                          : comp == "fiber-edge" ? 5
                                                 : 0;
                }
                cells.push_back({p, cls});
                pts.insert(p);
            }
            if (!pts.empty()) w = bounding_box(pts);
        } else {
            // fibered stage with one color per fiber scale
            auto g = load_def(o.def_path);
            fibered::Model model(g);
            const auto& tagged = model.block(o.stage);
            PointSet pts;
            for (auto& [p, tag] : tagged) {
                cells.push_back({p, tag < 0 ? 0 : 1 + tag % 7});
                pts.insert(p);
            }
            if (!pts.empty()) w = bounding_box(pts);
        }
        if (!o.window_spec.empty()) w = parse_window(o.window_spec);
        std::string img;
        if (o.format == "svg" || o.format == "text")
            img = render::to_svg(cells, w);
        else if (o.format == "pgm")
            img = render::to_pgm(cells, w);
        else
            throw Error(Errc::BadInput, "render format must be svg or pgm");
        emit(o.out_path, img);
    });

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const io::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return rc;
}

}  // namespace fractile::cli
