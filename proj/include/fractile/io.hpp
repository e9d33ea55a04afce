#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fractile/error.hpp"
#include "fractile/fractal.hpp"
#include "fractile/geom.hpp"
#include "fractile/tam.hpp"
#include "fractile/tiles.hpp"

namespace fractile::io {

using nlohmann::json;

// ---- fractal definition: {"c": int, "points": [[x,y], ...]} ----

inline json generator_to_json(const fractal::GeneratorSet& g) {
    json pts = json::array();
    for (Point p : g.points) pts.push_back({p.x, p.y});
    return json{{"c", g.c}, {"points", pts}};
}

inline fractal::GeneratorSet generator_from_json(const json& j) {
    if (!j.contains("c") || !j.contains("points"))
        throw Error(Errc::BadInput, "fractal definition needs c and points");
    PointSet pts;
    for (const auto& e : j.at("points")) {
        if (!e.is_array() || e.size() != 2) throw Error(Errc::BadInput, "bad point entry");
        pts.insert({e[0].get<std::int64_t>(), e[1].get<std::int64_t>()});
    }
    return fractal::validate_generator(j.at("c").get<std::int64_t>(), pts);
}

// ---- tile sets ----

struct Provenance {
    std::string component;  // seed | S | X | Y | fiber-edge | internal
    Point type{0, 0};
    std::string role;
};

struct TileSetFile {
    tam::TileSet tiles;
    std::map<std::string, Provenance> provenance;
    int tau = 2;
    std::string seed_tile;  // name of the tile placed at the origin
};

inline json tileset_to_json(const TileSetFile& f) {
    json tiles = json::array();
    for (const auto& t : f.tiles.tiles()) {
        json jt{{"name", t.name}};
        const Dir order[4] = {Dir::N, Dir::E, Dir::S, Dir::W};
        for (Dir d : order) {
            const tam::Glue& g = t.side(d);
            jt[dir_name(d)] = json{{"color", f.tiles.color_name(g.color)}, {"strength", g.strength}};
        }
        tiles.push_back(std::move(jt));
    }
    json j{{"tiles", tiles}, {"tau", f.tau}, {"seed", f.seed_tile}};
    if (!f.provenance.empty()) {
        json prov = json::object();
        for (const auto& [name, p] : f.provenance)
            prov[name] = json{{"component", p.component},
                              {"type", {p.type.x, p.type.y}},
                              {"role", p.role}};
        j["provenance"] = prov;
    }
    return j;
}

inline TileSetFile tileset_from_json(const json& j) {
    TileSetFile f;
    if (!j.contains("tiles")) throw Error(Errc::BadInput, "tile set needs a tiles array");
    for (const auto& jt : j.at("tiles")) {
        tam::TileType t;
        t.name = jt.at("name").get<std::string>();
        for (Dir d : all_dirs) {
            const auto& js = jt.at(dir_name(d));
            t.side(d) = {f.tiles.intern_color(js.at("color").get<std::string>()),
                         js.at("strength").get<std::int32_t>()};
        }
        f.tiles.add_tile(std::move(t));
    }
    f.tau = j.value("tau", 2);
    f.seed_tile = j.value("seed", std::string{});
    if (j.contains("provenance")) {
        for (auto it = j.at("provenance").begin(); it != j.at("provenance").end(); ++it) {
            Provenance p;
            p.component = it.value().at("component").get<std::string>();
            p.type = {it.value().at("type")[0].get<std::int64_t>(),
                      it.value().at("type")[1].get<std::int64_t>()};
            p.role = it.value().at("role").get<std::string>();
            f.provenance[it.key()] = std::move(p);
        }
    }
    return f;
}

inline tam::TAS tas_from_file(const TileSetFile& f) {
    tam::TAS tas;
    tas.tiles = f.tiles;
    tas.tau = f.tau;
    int seed = tas.tiles.find(f.seed_tile);
    if (seed < 0) throw Error(Errc::BadInput, "seed tile not found: " + f.seed_tile);
    tas.seed.placements.emplace(Point{0, 0}, seed);
    return tas;
}

// ---- text dumps ----

// one "x y" per line, lexicographically sorted
inline std::string points_to_text(const PointSet& pts) {
    std::ostringstream os;
    for (Point p : sorted_points(pts)) os << p.x << ' ' << p.y << '\n';
    return os.str();
}

inline PointSet points_from_text(const std::string& text) {
    PointSet pts;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Point p;
        if (!(ls >> p.x >> p.y)) throw Error(Errc::BadInput, "bad point line: " + line);
        pts.insert(p);
    }
    return pts;
}

// one "x y tile_name" per line, sorted by (x, y)
inline std::string assembly_to_text(const tam::Assembly& a, const tam::TileSet& ts) {
    std::vector<Point> order;
    order.reserve(a.placements.size());
    for (auto& [p, t] : a.placements) order.push_back(p);
    std::sort(order.begin(), order.end());
    std::ostringstream os;
    for (Point p : order) os << p.x << ' ' << p.y << ' ' << ts[a.at(p)].name << '\n';
    return os.str();
}

inline tam::Assembly assembly_from_text(const std::string& text, const tam::TileSet& ts) {
    tam::Assembly a;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Point p;
        std::string name;
        if (!(ls >> p.x >> p.y >> name)) throw Error(Errc::BadInput, "bad assembly line: " + line);
        int id = ts.find(name);
        if (id < 0) throw Error(Errc::BadInput, "unknown tile in dump: " + name);
        a.placements.emplace(p, id);
    }
    return a;
}

// step log: one "x y tile_name" per line in placement order
inline std::string steps_to_text(const std::vector<tam::Step>& steps, const tam::TileSet& ts) {
    std::ostringstream os;
    for (const auto& s : steps)
        os << s.pos.x << ' ' << s.pos.y << ' ' << ts[s.tile].name << '\n';
    return os.str();
}

inline std::vector<tam::Step> steps_from_text(const std::string& text, const tam::TileSet& ts) {
    std::vector<tam::Step> steps;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        tam::Step s;
        std::string name;
        if (!(ls >> s.pos.x >> s.pos.y >> name)) throw Error(Errc::BadInput, "bad step line: " + line);
        s.tile = ts.find(name);
        if (s.tile < 0) throw Error(Errc::BadInput, "unknown tile in step log: " + name);
        steps.push_back(s);
    }
    return steps;
}

// ---- filesystem helpers ----

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoFailure, "cannot write " + path);
    out << content;
}

}  // namespace fractile::io
