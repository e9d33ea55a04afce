#pragma once

// Squares. A square assembles from its entry row with a diagonal that climbs
// from the entry row's far corner to the top near corner; the top near
// corner (D-last) launches the forward-continuation counter row, and every
// geometric boundary line exposes the fill tapes a freshly seeded counter
// row marches over, with the seeding launch at the line's designated corner.

namespace fractile::compiler {
namespace gen {

enum class SqEntry { Case1, Case2, Case2Core, Reverse };

class SquareGen {
  public:
    SquareGen(Emitter& em, const SquareSpec& spec) : em_(em), spec_(spec), c_(spec.g->c) {
        self_ = "S:" + tv(spec_.type);
    }

    void run() {
        SqEntry ek = entry_kind();
        for (std::int64_t w = 2; w <= kMaxSimWidth; ++w) {
            bool core_scale = w == 2 && (spec_.cls == GrowthClass::AxisVertical ||
                                         spec_.cls == GrowthClass::AxisHorizontal);
            if (core_scale) {
                simulate(w, SqEntry::Case2Core, true);
                continue;
            }
            simulate(w, ek, true);
            if (ek != SqEntry::Case2Core) simulate(w, ek, false);
        }
    }

  private:
    SqEntry entry_kind() const {
        switch (spec_.cls) {
            case GrowthClass::AxisVertical:
            case GrowthClass::AxisHorizontal:
                return SqEntry::Case2;
            case GrowthClass::ReverseVertical:
            case GrowthClass::ReverseHorizontal:
                return SqEntry::Reverse;
            default:
                return SqEntry::Case1;
        }
    }

    std::string g(const std::string& role, const std::string& idx) const {
        return self_ + ":" + role + ":" + idx;
    }
    Face sf_face(PC cls) const { return {g("sf", pc_name(pc_for_sq(cls))), 1}; }

    std::string input_prefix() const { return spec_.input_comp + ":" + tv(spec_.input_type); }

    // tape of the input row under entry position k (input width iw)
    std::string input_tape(std::int64_t k, std::int64_t iw, bool from_a) const {
        if (entry_kind() == SqEntry::Reverse) {
            std::int64_t v = 1;  // the down counter ends at value 1
            bool afx = true, vfx = true;
            for (std::int64_t i = 0; i < k; ++i) afx &= digit_of(v, c_, i) == 0;
            vfx = k == 0 || digit_of(v, c_, 0) == 1;
            for (std::int64_t i = 1; i < k; ++i) vfx &= digit_of(v, c_, i) == 0;
            return tape_a_name(input_prefix(), digit_of(v, c_, k), class_of(k, iw), afx, vfx);
        }
        int d = static_cast<int>(c_ - 1);
        if (from_a) return tape_a_name(input_prefix(), d, class_of(k, iw), true, true);
        return tape_b_name(input_prefix(), d, class_of(k, iw));
    }

    std::string entry_launch(SqEntry ek, bool from_a) const {
        switch (ek) {
            case SqEntry::Case1: return g("ent", from_a ? "sa" : "sb");
            case SqEntry::Case2: return g("c2e", from_a ? "sa" : "sb");
            case SqEntry::Case2Core: return g("c2e", "score");
            case SqEntry::Reverse: return g("rent", from_a ? "sa" : "sb");
        }
        return {};
    }

    // ---- geometric boundary handling -------------------------------------

    enum class Line { N, E, S, W };

    struct LineSpec {
        bool entry = false;
        std::string go;     // counter start launch (empty if none)
        bool active = false;
    };

    LineSpec line_spec(Line ln) const {
        LineSpec out;
        auto counter = [&](const std::string& comp, Point ty) {
            out.go = comp + ":" + tv(ty) + ":go:s";
            out.active = true;
        };
        switch (ln) {
            case Line::N:
                if (spec_.cls == GrowthClass::ReverseVertical)
                    out.entry = true;
                else if (spec_.emit_y)
                    counter("Y", spec_.type);
                break;
            case Line::E:
                if (spec_.cls == GrowthClass::ReverseHorizontal)
                    out.entry = true;
                else if (spec_.emit_x)
                    counter("X", spec_.type);
                break;
            case Line::S:
                if (spec_.cls == GrowthClass::ForwardVertical ||
                    spec_.cls == GrowthClass::AxisVertical)
                    out.entry = true;
                else if (spec_.child_down)
                    counter("Y", spec_.down_child);
                break;
            case Line::W:
                if (spec_.cls == GrowthClass::ForwardHorizontal ||
                    spec_.cls == GrowthClass::AxisHorizontal)
                    out.entry = true;
                else if (spec_.child_left)
                    counter("X", spec_.left_child);
                break;
        }
        return out;
    }

    static bool on_line(Line ln, std::int64_t gx, std::int64_t gy, std::int64_t w) {
        switch (ln) {
            case Line::N: return gy == w - 1;
            case Line::E: return gx == w - 1;
            case Line::S: return gy == 0;
            case Line::W: return gx == 0;
        }
        return false;
    }
    // corner where the seeded row's LSD cell sits
    static bool go_corner(Line ln, std::int64_t gx, std::int64_t gy, std::int64_t w) {
        switch (ln) {
            case Line::N: return gx == w - 1;
            case Line::E: return gy == w - 1;
            case Line::S: return gx == w - 1;
            case Line::W: return gy == w - 1;
        }
        return false;
    }
    // the far end of the seeded row reads a class-l tape
    static PC line_pc(Line ln, std::int64_t gx, std::int64_t gy) {
        switch (ln) {
            case Line::N: return gx == 0 ? PC::L : PC::M;
            case Line::E: return gy == 0 ? PC::L : PC::M;
            case Line::S: return gx == 0 ? PC::L : PC::M;
            case Line::W: return gy == 0 ? PC::L : PC::M;
        }
        return PC::M;
    }
    static Dir line_dir(Line ln) {
        switch (ln) {
            case Line::N: return Dir::N;
            case Line::E: return Dir::E;
            case Line::S: return Dir::S;
            case Line::W: return Dir::W;
        }
        return Dir::N;
    }

    void geom(std::int64_t k, std::int64_t r, std::int64_t w, std::int64_t& gx,
              std::int64_t& gy) const {
        Point ua = unit(spec_.frame.ahead);
        Point un = unit(spec_.frame.near);
        auto axis = [&](std::int64_t a, std::int64_t n) -> std::int64_t {
            if (a == 1) return r;
            if (a == -1) return w - 1 - r;
            if (n == 1) return w - 1 - k;
            return k;
        };
        gx = axis(ua.x, un.x);
        gy = axis(ua.y, un.y);
    }

    // add boundary faces; returns a name suffix encoding what was added
    std::string boundary(Sides& s, std::int64_t k, std::int64_t r, std::int64_t w) {
        std::int64_t gx, gy;
        geom(k, r, w, gx, gy);
        std::string code;
        for (Line ln : {Line::N, Line::E, Line::S, Line::W}) {
            if (!on_line(ln, gx, gy, w)) continue;
            LineSpec ls = line_spec(ln);
            if (ls.entry || !ls.active) continue;
            GlueSpec& slot = s.g[static_cast<int>(line_dir(ln))];
            if (!slot.name.empty()) continue;
            if (go_corner(ln, gx, gy, w)) {
                slot = {ls.go, 2};
                code += std::string("G") + dir_name(line_dir(ln));
            } else {
                PC cls = line_pc(ln, gx, gy);
                slot = {g("sf", pc_name(cls)), 1};
                code += std::string("T") + dir_name(line_dir(ln)) + pc_name(cls);
            }
        }
        return code;
    }

    // ---- simulation -------------------------------------------------------

    void simulate(std::int64_t w, SqEntry ek, bool from_a) {
        std::vector<Face> below = emit_entry_row(w, ek, from_a);
        for (std::int64_t r = 1; r < w; ++r) below = emit_fill_row(w, r, below);
    }

    std::vector<Face> emit_entry_row(std::int64_t w, SqEntry ek, bool from_a) {
        std::vector<Face> faces(static_cast<std::size_t>(w));
        bool overhang = ek == SqEntry::Case2 || ek == SqEntry::Case2Core;
        std::int64_t iw = overhang ? w - 1 : w;
        std::string mnear = g("em", "n");
        std::string mfar = g("em", "f");
        std::string ovh = g("ovh", "x");
        std::string ekc = ek == SqEntry::Case1 ? "c1"
                          : ek == SqEntry::Case2 ? "c2"
                          : ek == SqEntry::Case2Core ? "cc"
                                                     : "rv";
        for (std::int64_t k = 0; k < w; ++k) {
            bool far_corner = k == w - 1;
            bool pre_ovh = overhang && k == w - 2;
            Sides s;
            std::string idx = ekc;
            if (far_corner && overhang) {
                put(s, spec_.frame, LS::Near, {ovh, 2});
                idx += "ovh";
            } else if (ek == SqEntry::Case2Core && k == 0) {
                // width-1 input: launched and pre-overhang at once
                put(s, spec_.frame, LS::Back, {entry_launch(ek, true), 2});
                put(s, spec_.frame, LS::Far, {ovh, 2});
                idx += "core";
            } else if (from_a) {
                // assembles far to near from above the input's MSD end
                bool launched = overhang ? pre_ovh : far_corner;
                if (launched) {
                    put(s, spec_.frame, LS::Back, {entry_launch(ek, true), 2});
                } else {
                    put(s, spec_.frame, LS::Far, {mnear, 1});
                    put(s, spec_.frame, LS::Back, {input_tape(k, iw, true), 1});
                }
                if (k > 0) put(s, spec_.frame, LS::Near, {mnear, 1});
                if (pre_ovh) put(s, spec_.frame, LS::Far, {ovh, 2});
                idx += std::string("a") + (launched ? "s" : far_corner ? "f" : k == 0 ? "n" : "m");
                if (!launched) idx += "b" + glue_code(input_tape(k, iw, true));
            } else {
                // assembles near to far from above the input's LSD end
                if (k == 0) {
                    put(s, spec_.frame, LS::Back, {entry_launch(ek, false), 2});
                } else {
                    put(s, spec_.frame, LS::Near, {mfar, 1});
                    if (!(far_corner && overhang))
                        put(s, spec_.frame, LS::Back, {input_tape(k, iw, false), 1});
                }
                if (pre_ovh)
                    put(s, spec_.frame, LS::Far, {ovh, 2});
                else if (!far_corner)
                    put(s, spec_.frame, LS::Far, {mfar, 1});
                idx += std::string("b") + (far_corner ? "f" : pre_ovh ? "p" : k == 0 ? "n" : "m");
                if (k != 0 && !(far_corner && overhang)) idx += "b" + glue_code(input_tape(k, iw, false));
            }
            Face ahead = far_corner ? Face{g("pd0", "x"), 2} : sf_face(class_of(k, w));
            put(s, spec_.frame, LS::Ahead, ahead);
            faces[static_cast<std::size_t>(k)] = ahead;
            idx += boundary(s, k, 0, w);
            em_.tile(g("e0", idx), s, {"S", spec_.type, "square-entry"});
        }
        return faces;
    }

    std::vector<Face> emit_fill_row(std::int64_t w, std::int64_t r, const std::vector<Face>& below) {
        std::vector<Face> faces(static_cast<std::size_t>(w));
        std::int64_t dpos = w - 1 - r;
        bool top = r == w - 1;
        {   // preD above the previous diagonal cell
            std::int64_t k = dpos + 1;
            Sides s;
            put(s, spec_.frame, LS::Back, {r == 1 ? g("pd0", "x") : g("pdm", "x"), 2});
            put(s, spec_.frame, LS::Near, {g("dnn", "x"), 1});
            if (k < w - 1) put(s, spec_.frame, LS::Far, {g("fm", "x"), 1});
            Face ahead = sf_face(class_of(k, w));
            put(s, spec_.frame, LS::Ahead, ahead);
            faces[static_cast<std::size_t>(k)] = ahead;
            std::string idx = std::string(r == 1 ? "f" : "m") + (k == w - 1 ? "e" : "i");
            idx += boundary(s, k, r, w);
            em_.tile(g("pd", idx), s, {"S", spec_.type, "square"});
        }
        {   // diagonal cell
            std::int64_t k = dpos;
            const Face& bt = below[static_cast<std::size_t>(k)];
            Sides s;
            put(s, spec_.frame, LS::Far, {g("dnn", "x"), 1});
            put(s, spec_.frame, LS::Back, {bt.name, 1});
            Face ahead;
            if (top) {
                LineSpec ls = line_for(LS::Ahead);
                if (ls.active) ahead = {ls.go, 2};
            } else {
                ahead = {g("pdm", "x"), 2};
            }
            put(s, spec_.frame, LS::Ahead, ahead);
            if (!top) put(s, spec_.frame, LS::Near, {g("gnm", "x"), 1});
            faces[static_cast<std::size_t>(k)] = ahead;
            std::string idx = std::string(top ? "l" : "m") + "b" + glue_code(bt.name);
            idx += boundary(s, k, r, w);
            em_.tile(g("dc", idx), s, {"S", spec_.type, "square"});
        }
        for (std::int64_t k = dpos - 1; k >= 0; --k) {  // near fill
            const Face& bt = below[static_cast<std::size_t>(k)];
            Sides s;
            put(s, spec_.frame, LS::Far, {g("gnm", "x"), 1});
            put(s, spec_.frame, LS::Back, {bt.name, 1});
            if (k > 0) put(s, spec_.frame, LS::Near, {g("gnm", "x"), 1});
            Face ahead = sf_face(class_of(k, w));
            put(s, spec_.frame, LS::Ahead, ahead);
            faces[static_cast<std::size_t>(k)] = ahead;
            std::string idx = std::string("c") + pc_name(pc_for_sq(class_of(k, w))) + "b" +
                              glue_code(bt.name);
            idx += boundary(s, k, r, w);
            em_.tile(g("nc", idx), s, {"S", spec_.type, "square"});
        }
        for (std::int64_t k = dpos + 2; k < w; ++k) {  // far fill
            const Face& bt = below[static_cast<std::size_t>(k)];
            Sides s;
            put(s, spec_.frame, LS::Near, {g("fm", "x"), 1});
            put(s, spec_.frame, LS::Back, {bt.name, 1});
            if (k < w - 1) put(s, spec_.frame, LS::Far, {g("fm", "x"), 1});
            Face ahead = sf_face(class_of(k, w));
            put(s, spec_.frame, LS::Ahead, ahead);
            faces[static_cast<std::size_t>(k)] = ahead;
            std::string idx = std::string("c") + pc_name(pc_for_sq(class_of(k, w))) + "b" +
                              glue_code(bt.name);
            idx += boundary(s, k, r, w);
            em_.tile(g("fc", idx), s, {"S", spec_.type, "square"});
        }
        return faces;
    }

    LineSpec line_for(LS side) const {
        switch (to_dir(spec_.frame, side)) {
            case Dir::N: return line_spec(Line::N);
            case Dir::E: return line_spec(Line::E);
            case Dir::S: return line_spec(Line::S);
            case Dir::W: return line_spec(Line::W);
        }
        return {};
    }

    Emitter& em_;
    SquareSpec spec_;
    std::int64_t c_;
    std::string self_;
};

}  // namespace gen
}  // namespace fractile::compiler

#include "fractile/compiler_impl3.hpp"
