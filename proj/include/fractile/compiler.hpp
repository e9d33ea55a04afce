#pragma once

// Tile-set compiler: turns a nice generator into a temperature-2 tile
// assembly system whose terminal assembly is the fibered version of the
// fractal. Phase 1 computes the spanning plan over V (counters.hpp); phase 2
// emits, per nonzero u in V, a square group S_u and two counter groups Y_u,
// X_u, wired by growth class, plus the shared seed-pattern interior.
//
// Geometry it realizes, in block-relative coordinates (block = T_i u F_i of
// side l(i), corner at (-(i+1), -(i+1))):
//   * S_u: the (i+2)-square at the corner,
//   * Y_u: the width-(i+2) column band above it, rows = the modified base-c
//     counting scheme, least significant digit in the rightmost column,
//   * X_u: the mirror band to the right, least significant digit in the top
//     row,
//   * spacing-row groups host the X/Y bands of nested spine sub-blocks
//     (the "oppositely oriented counters"), count rows feed the hard-coded
//     pattern of T_0 through port glues.
//
// Rows of a counter assemble boustrophedon: A-rows start at the LSD end and
// march toward the MSD carrying carry/borrow state; B-rows start at the MSD
// end and recompute digits from flags taped by the A-row below. Spacing
// groups replicate their row with a diagonal that counts the repetitions
// geometrically and exits into the next value's row.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fractile/counters.hpp"
#include "fractile/error.hpp"
#include "fractile/fractal.hpp"
#include "fractile/geom.hpp"
#include "fractile/tiles.hpp"

namespace fractile::compiler {

// ---------------------------------------------------------------- labels --

// Grammar: component:(x,y):role:index[:d<digit>][:c]
struct Label {
    std::string component;
    Point type{0, 0};
    std::string role;
    std::string index;
    int digit = -1;
    bool carry = false;
};

inline std::string render_label(const Label& l) {
    std::string s = l.component + ":(" + std::to_string(l.type.x) + "," +
                    std::to_string(l.type.y) + "):" + l.role + ":" + l.index;
    if (l.digit >= 0) s += ":d" + std::to_string(l.digit);
    if (l.carry) s += ":c";
    return s;
}

inline Label parse_label(const std::string& s) {
    std::vector<std::string> seg;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(':', pos);
        if (next == std::string::npos) next = s.size();
        seg.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    if (seg.size() < 4) throw Error(Errc::BadInput, "label too short: " + s);
    Label l;
    l.component = seg[0];
    const std::string& tv = seg[1];
    if (tv.size() < 5 || tv.front() != '(' || tv.back() != ')')
        throw Error(Errc::BadInput, "bad type vector in label: " + s);
    std::size_t comma = tv.find(',');
    if (comma == std::string::npos) throw Error(Errc::BadInput, "bad type vector in label: " + s);
    l.type.x = std::stoll(tv.substr(1, comma - 1));
    l.type.y = std::stoll(tv.substr(comma + 1, tv.size() - comma - 2));
    l.role = seg[2];
    l.index = seg[3];
    for (std::size_t i = 4; i < seg.size(); ++i) {
        if (seg[i] == "c")
            l.carry = true;
        else if (!seg[i].empty() && seg[i][0] == 'd')
            l.digit = std::stoi(seg[i].substr(1));
        else
            throw Error(Errc::BadInput, "bad label suffix: " + s);
    }
    return l;
}

// ------------------------------------------------------------- compile() --

struct TileProvenance {
    std::string component;  // seed | S | X | Y | fiber-edge | internal
    Point type{0, 0};
    std::string role;
};

struct CompiledTAS {
    tam::TAS tas;
    std::map<std::string, TileProvenance> provenance;
    SpanningPlan spanning_plan;
};

namespace gen {

struct GlueSpec {
    std::string name;
    int strength = 0;
};

struct Sides {
    GlueSpec g[4];
};

enum class LS { Ahead, Back, Near, Far };

struct Frame {
    Dir ahead;
    Dir near;  // toward the LSD end within a row; also the LSD side face
};

inline Dir to_dir(const Frame& f, LS s) {
    switch (s) {
        case LS::Ahead: return f.ahead;
        case LS::Back: return opposite(f.ahead);
        case LS::Near: return f.near;
        case LS::Far: return opposite(f.near);
    }
    return f.ahead;
}

inline void put(Sides& s, const Frame& f, LS side, GlueSpec g) {
    s.g[static_cast<int>(to_dir(f, side))] = std::move(g);
}

class Emitter {
  public:
    Emitter(tam::TAS& tas, std::map<std::string, TileProvenance>& prov)
        : tas_(tas), prov_(prov) {}

    // Adds a tile unless one with the same name exists. Re-emission with the
    // same glues is a no-op; with different glues it is a hard error (the
    // generators' state machines would be inconsistent). Distinct names with
    // identical glue tuples collapse onto the first tile: interchangeable
    // tile types would otherwise break directedness.
    std::size_t distinct_tiles() const { return emitted_.size(); }

    void tile(const std::string& name, const Sides& s, const TileProvenance& p) {
        auto it = emitted_.find(name);
        if (it != emitted_.end()) {
            for (int d = 0; d < 4; ++d) {
                if (it->second.g[d].name != s.g[d].name ||
                    it->second.g[d].strength != s.g[d].strength)
                    throw Error(Errc::BadInput, "conflicting re-emission of tile " + name);
            }
            return;
        }
        emitted_.emplace(name, s);
        std::string key = content_key(s);
        if (!content_.emplace(key, name).second) return;  // same glues as an earlier tile
        tam::TileType t;
        t.name = name;
        for (Dir d : all_dirs) {
            const GlueSpec& gs = s.g[static_cast<int>(d)];
            t.side(d) = {tas_.tiles.intern_color(gs.name), gs.name.empty() ? 0 : gs.strength};
        }
        tas_.tiles.add_tile(std::move(t));
        prov_.emplace(name, p);
    }

  private:
    static std::string content_key(const Sides& s) {
        std::string key;
        for (int d = 0; d < 4; ++d) {
            key += s.g[d].name;
            key += '\x1f';
            key += std::to_string(s.g[d].name.empty() ? 0 : s.g[d].strength);
            key += '\x1e';
        }
        return key;
    }

    tam::TAS& tas_;
    std::map<std::string, TileProvenance>& prov_;
    std::map<std::string, Sides> emitted_;
    std::map<std::string, std::string> content_;
};

// position classes carried in tapes: R = LSD end, M1 = one in from the LSD,
// M = interior, L = MSD end
enum class PC { R, M1, M, L };
inline const char* pc_name(PC c) {
    switch (c) {
        case PC::R: return "r";
        case PC::M1: return "m1";
        case PC::M: return "m";
        case PC::L: return "l";
    }
    return "?";
}
inline PC pc_for_sq(PC c) { return c == PC::M1 ? PC::M : c; }  // squares merge M1 into M

inline std::string tv(Point u) {
    return "(" + std::to_string(u.x) + "," + std::to_string(u.y) + ")";
}

// End interface of a counter band.
enum class EndKind { Case1, Case2, Terminal, SeedReverseS };

struct CounterSpec {
    const fractal::GeneratorSet* g = nullptr;
    std::string comp;  // "Y" or "X"
    Point type{0, 0};
    Point seeder{0, 0};  // square whose fill tapes the start row marches over
    Frame frame{};
    int delta = 1;  // +1 counts upward from 1, -1 counts down from c^w - 1
    bool attached_entry = false;
    EndKind end = EndKind::Terminal;
    Point case1_child{0, 0};
    bool vertical = false;  // true for Y bands (side faces point east)
};

struct SquareSpec {
    const fractal::GeneratorSet* g = nullptr;
    Point type{0, 0};
    GrowthClass cls = GrowthClass::ForwardVertical;
    Frame frame{};
    // entry interface names are derived from the input band
    bool case2 = false;
    Point input_type{0, 0};
    std::string input_comp;  // "Y" or "X" (or "core" for the scale-0 case-2)
    // emissions
    bool emit_y = false, emit_x = false;          // own counters
    bool child_down = false, child_left = false;  // reverse children
    Point down_child{0, 0}, left_child{0, 0};
};

}  // namespace gen

CompiledTAS compile(const fractal::GeneratorSet& g);

}  // namespace fractile::compiler

#include "fractile/compiler_impl.hpp"
