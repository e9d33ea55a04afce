#pragma once

// Implementation of compile(). Counter bands and squares are simulated cell
// by cell over widths 2..kMaxSimWidth; every simulated cell emits a tile
// whose name packs exactly the parameters that determine its glues, so the
// same logical tile reappearing at another width or scale collapses onto one
// tile type, and any inconsistency in the state machine surfaces as a
// conflicting re-emission.

#include <cassert>

namespace fractile::compiler {
namespace gen {

inline constexpr std::int64_t kMaxSimWidth = 8;

inline std::string flag(bool b) { return b ? "1" : "0"; }

using Face = GlueSpec;

using RowFaces = std::vector<Face>;  // ahead faces by digit position (0 = LSD)

inline int digit_of(std::int64_t v, std::int64_t c, std::int64_t j) {
    while (j-- > 0) v /= c;
    return static_cast<int>(v % c);
}

inline PC class_of(std::int64_t pos, std::int64_t w) {
    if (pos == 0) return PC::R;
    if (pos == w - 1) return PC::L;
    if (pos == 1) return PC::M1;
    return PC::M;
}

inline std::string tape_a_name(const std::string& prefix, int d, PC cls, bool afx, bool vfx) {
    return prefix + ":at:" + pc_name(cls) + "f" + flag(afx) + flag(vfx) + "q" + std::to_string(d);
}
inline std::string tape_b_name(const std::string& prefix, int d, PC cls) {
    return prefix + ":bt:" + pc_name(cls) + "q" + std::to_string(d);
}

// compact, grammar-safe code of a glue name (for embedding in tile names)
inline std::string glue_code(const std::string& glue) {
    std::string code;
    for (char ch : glue)
        code += (ch == ':' || ch == '(' || ch == ')' || ch == ',') ? '_' : ch;
    return code;
}

// ---------------------------------------------------------------- counter --

class CounterGen {
  public:
    CounterGen(Emitter& em, const CounterSpec& spec)
        : em_(em), spec_(spec), c_(spec.g->c) {
        self_ = spec_.comp + ":" + tv(spec_.type);
        att_comp_ = spec_.comp == "Y" ? "X" : "Y";
        fill_ = spec_.delta > 0 ? static_cast<int>(c_ - 1) : 0;
    }

    void run() {
        // the tile family saturates quickly; stop once two consecutive
        // widths contribute nothing new
        int quiet = 0;
        for (std::int64_t w = 2; w <= kMaxSimWidth && quiet < 2; ++w) {
            std::size_t before = em_.distinct_tiles();
            simulate(w, false);
            if (spec_.attached_entry) simulate(w, true);
            quiet = em_.distinct_tiles() == before ? quiet + 1 : 0;
        }
    }

  private:
    std::string g(const std::string& role, const std::string& idx) const {
        return self_ + ":" + role + ":" + idx;
    }

    // ---- tapes -----------------------------------------------------------

    void row_flags(std::int64_t v, std::int64_t j, bool& afx, bool& vfx) const {
        afx = true;
        for (std::int64_t i = 0; i < j; ++i) afx &= digit_of(v, c_, i) == fill_;
        if (spec_.delta > 0) {
            vfx = afx;
        } else {
            vfx = j == 0 || digit_of(v, c_, 0) == 1;
            for (std::int64_t i = 1; i < j; ++i) vfx &= digit_of(v, c_, i) == 0;
        }
    }

    Face a_tape_face(std::int64_t v, std::int64_t j, std::int64_t w) const {
        bool afx, vfx;
        row_flags(v, j, afx, vfx);
        return {tape_a_name(self_, digit_of(v, c_, j), class_of(j, w), afx, vfx), 1};
    }
    Face b_tape_face(std::int64_t v, std::int64_t j, std::int64_t w) const {
        return {tape_b_name(self_, digit_of(v, c_, j), class_of(j, w)), 1};
    }

    // ---- the LSD side face (ports and attachment interfaces) --------------

    Face rend_side(std::int64_t v, bool diag_adjacent = false) const {
        std::int64_t m = v % (c_ * c_);
        int d0 = static_cast<int>(v % c_);
        if (m != 0) {
            bool occupied =
                d0 == 0 || (spec_.vertical ? spec_.g->contains({1, d0}) : spec_.g->contains({d0, 1}));
            if (!occupied) return {};
            return {std::string("T0:(0,0):") + (spec_.vertical ? "py" : "px") + ":" +
                        std::to_string(m),
                    m == 1 ? 1 : 2};
        }
        int r = wall_digit(v);
        if (spec_.delta > 0)
            return diag_adjacent ? Face{att_typed(r, "at"), 1} : Face{att_untyped("ab"), 2};
        return diag_adjacent ? Face{att_typed(r, "ab"), 2} : Face{att_untyped("at"), 1};
    }

    int wall_digit(std::int64_t v) const { return digit_of(v, c_, rho(v, c_)); }

    std::string att_untyped(const std::string& role) const {
        return att_comp_ + ":(0,0):" + role + ":" + (spec_.delta > 0 ? "u" : "d");
    }
    std::string att_typed(int r, const std::string& role) const {
        Point ty = spec_.vertical ? Point{0, r} : Point{r, 0};
        return att_comp_ + ":" + tv(ty) + ":" + role + ":" + (spec_.delta > 0 ? "u" : "d");
    }

    // ---- launches ----------------------------------------------------------

    int pack_q(std::int64_t v) const {
        return static_cast<int>(v % c_) + digit_of(v, c_, 1) * static_cast<int>(c_);
    }
    std::string la_glue(std::int64_t launching_value) const {
        return g("la", "q" + std::to_string(pack_q(launching_value)));
    }
    std::string lb_glue(int lend_digit, bool afx_excl, bool vfx_excl, bool w2) const {
        return g("lb", "q" + std::to_string(lend_digit) + "f" + flag(afx_excl) + flag(vfx_excl) +
                           flag(w2));
    }

    Face end_interface(bool from_a) const {
        std::string s = from_a ? "sa" : "sb";
        switch (spec_.end) {
            case EndKind::Terminal: return {};
            case EndKind::Case1: return {"S:" + tv(spec_.case1_child) + ":ent:" + s, 2};
            case EndKind::Case2: {
                Point child = spec_.vertical ? Point{0, 1} : Point{1, 0};
                return {"S:" + tv(child) + ":c2e:" + s, 2};
            }
            case EndKind::SeedReverseS: return {"S:" + tv(spec_.type) + ":rent:" + s, 2};
        }
        return {};
    }

    // ---- row machinery -----------------------------------------------------

    struct Launch {
        char kind = 'A';
        std::string glue;
        int q = 0;         // packed (d1,d0) of the launching row, for A
        int d = 0;         // MSD digit of the launching row, for B
        bool afx = false;  // flags at the MSD end of the launching row, for B
        bool vfx = false;
        bool w2 = false;   // the band is two digits wide
    };

    void simulate(std::int64_t w, bool attached) {
        std::int64_t top = 1;
        for (std::int64_t i = 0; i < w; ++i) top *= c_;
        std::int64_t first = spec_.delta > 0 ? 1 : top - 1;
        std::int64_t last = spec_.delta > 0 ? top - 1 : 1;

        RowFaces below;
        Launch next;
        if (attached) {
            below = emit_attached_entry(w);
            next = {'A', la_glue(first), pack_q(first), 0, false};
        } else {
            below = emit_start_row(w, first, next);
        }
        std::int64_t v = first;
        while (v != last) {
            std::int64_t cur = v + spec_.delta;
            std::int64_t t = cur % c_ == 0 ? rho(cur, c_) : 0;
            below = emit_row(w, cur, next, below, cur == last, next);
            if (t >= 2) {
                below = emit_group_rows(w, cur, t, below, next);
                cur += spec_.delta;
                below = emit_row(w, cur, next, below, cur == last, next);
            }
            v = cur;
        }
    }

    RowFaces emit_row(std::int64_t w, std::int64_t v, Launch in, const RowFaces& below,
                      bool terminal, Launch& out) {
        return in.kind == 'A' ? emit_a_row(w, v, in, below, terminal, out)
                              : emit_b_row(w, v, in, below, terminal, out);
    }

    struct AState {
        int phase = 1;
        bool apply = true;
        int zrun = 0;  // 0 none, 1 running, 2 done
        bool afx = true;
        bool vfx = true;
        int d0 = 0;
        std::string pack() const {
            return "p" + std::to_string(phase) + "a" + flag(apply) + "z" + std::to_string(zrun) +
                   "f" + flag(afx) + "v" + flag(vfx) + "q" + std::to_string(d0);
        }
    };
    std::string am_glue(const AState& s) const { return g("am", s.pack()); }

    RowFaces emit_a_row(std::int64_t w, std::int64_t v, const Launch& in, const RowFaces& below,
                        bool terminal, Launch& out) {
        RowFaces faces(static_cast<std::size_t>(w));
        std::int64_t t = v % c_ == 0 ? rho(v, c_) : 0;
        int d0 = digit_of(v, c_, 0);
        AState st;
        st.phase = 1;
        st.apply = d0 == (spec_.delta > 0 ? 0 : static_cast<int>(c_ - 1));
        st.zrun = d0 == 0 ? 1 : 0;
        st.afx = d0 == fill_;
        st.vfx = spec_.delta > 0 ? st.afx : d0 == 1;
        st.d0 = d0;
        {
            Sides s;
            put(s, spec_.frame, LS::Back, {in.glue, 2});
            put(s, spec_.frame, LS::Near, rend_side(v));
            Face ahead = t == 1 ? Face{la_glue(v), 2} : a_tape_face(v, 0, w);
            put(s, spec_.frame, LS::Ahead, ahead);
            put(s, spec_.frame, LS::Far, {am_glue(st), 1});
            em_.tile(g("ar", "i" + std::to_string(in.q)), s,
                     {spec_.comp, spec_.type, "count-lsd"});
            faces[0] = ahead;
        }
        std::string lb;
        for (std::int64_t j = 1; j < w; ++j) {
            const Face& bt = below[static_cast<std::size_t>(j)];
            int digit = digit_of(v, c_, j);
            bool is_lend = j == w - 1;
            bool wall = st.zrun == 1 && digit != 0;
            Sides s;
            put(s, spec_.frame, LS::Near, {am_glue(st), 1});
            put(s, spec_.frame, LS::Back, {bt.name, 1});
            Face ahead;
            std::string role = is_lend ? "al" : "ac";
            if (is_lend) {
                bool afx_excl, vfx_excl;
                row_flags(v, j, afx_excl, vfx_excl);
                if (terminal)
                    ahead = end_interface(true);
                else if (wall && j >= 2)  // the zero run spans the whole row body
                    ahead = {g("ds", "q" + std::to_string(digit) + pc_name(PC::L)), 2};
                else if (t >= 1)
                    ahead = a_tape_face(v, j, w);
                else {
                    lb = lb_glue(digit, afx_excl, vfx_excl, w == 2);
                    ahead = {lb, 2};
                }
            } else if (wall && j >= 2) {
                ahead = {g("ds", "q" + std::to_string(digit) + pc_name(class_of(j, w))), 2};
            } else {
                ahead = a_tape_face(v, j, w);
            }
            put(s, spec_.frame, LS::Ahead, ahead);
            AState nst = st;
            nst.phase = 2;
            nst.apply = st.apply && digit_of(v - spec_.delta, c_, j) ==
                                        (spec_.delta > 0 ? static_cast<int>(c_ - 1) : 0);
            if (wall) nst.zrun = 2;
            nst.afx = st.afx && digit == fill_;
            nst.vfx = spec_.delta > 0 ? nst.afx : (st.vfx && digit == 0);
            if (!is_lend) put(s, spec_.frame, LS::Far, {am_glue(nst), 1});
            em_.tile(g(role, "s" + st.pack() + "b" + glue_code(bt.name) +
                               (is_lend && terminal ? "end" : "")),
                     s, {spec_.comp, spec_.type, is_lend ? "fiber-edge-count" : "count"});
            faces[static_cast<std::size_t>(j)] = ahead;
            st = nst;
        }
        if (t == 1)
            out = {'A', la_glue(v), pack_q(v)};
        else if (t == 0 && !terminal) {
            bool afx_excl, vfx_excl;
            row_flags(v, w - 1, afx_excl, vfx_excl);
            out = {'B', lb, 0, digit_of(v, c_, w - 1), afx_excl, vfx_excl, w == 2};
        }
        return faces;
    }

    struct BState {
        int prev = 0;
        bool term = true;
        std::string pack() const { return "q" + std::to_string(prev) + "t" + flag(term); }
    };
    std::string bm_glue(const BState& s) const { return g("bm", s.pack()); }

    RowFaces emit_b_row(std::int64_t w, std::int64_t v, const Launch& in, const RowFaces& below,
                        bool terminal, Launch& out) {
        RowFaces faces(static_cast<std::size_t>(w));
        std::int64_t t = v % c_ == 0 ? rho(v, c_) : 0;
        BState st;
        {
            int digit = digit_of(v, c_, w - 1);
            Sides s;
            put(s, spec_.frame, LS::Back, {in.glue, 2});
            Face ahead;
            if (t >= 2 && t == w - 1)  // wall at the MSD end
                ahead = {g("ds", "q" + std::to_string(digit) + pc_name(PC::L)), 2};
            else
                ahead = b_tape_face(v, w - 1, w);
            put(s, spec_.frame, LS::Ahead, ahead);
            st.prev = digit;
            st.term = spec_.delta > 0 ? digit == static_cast<int>(c_ - 1) : digit == 0;
            put(s, spec_.frame, LS::Near, {bm_glue(st), 1});
            em_.tile(g("bl", "q" + std::to_string(in.d) + "f" + flag(in.afx) + flag(in.vfx) +
                               flag(in.w2)),
                     s, {spec_.comp, spec_.type, "fiber-edge-count"});
            faces[static_cast<std::size_t>(w - 1)] = ahead;
        }
        for (std::int64_t j = w - 2; j >= 0; --j) {
            const Face& bt = below[static_cast<std::size_t>(j)];
            int digit = digit_of(v, c_, j);
            bool wall = t >= 2 && j == t;
            Sides s;
            put(s, spec_.frame, LS::Far, {bm_glue(st), 1});
            put(s, spec_.frame, LS::Back, {bt.name, 1});
            Face ahead;
            std::string role = j == 0 ? "br" : "bc";
            if (j == 0) {
                put(s, spec_.frame, LS::Near, rend_side(v));
                if (terminal)
                    ahead = end_interface(false);
                else if (t >= 2)
                    ahead = a_tape_face(v, 0, w);
                else
                    ahead = {la_glue(v), 2};
            } else if (wall) {
                ahead = {g("ds", "q" + std::to_string(digit) + pc_name(class_of(j, w))), 2};
            } else {
                ahead = b_tape_face(v, j, w);
            }
            put(s, spec_.frame, LS::Ahead, ahead);
            BState nst;
            nst.prev = digit;
            nst.term = st.term && (spec_.delta > 0 ? digit == static_cast<int>(c_ - 1)
                                                   : digit == 0);
            if (j > 0) put(s, spec_.frame, LS::Near, {bm_glue(nst), 1});
            em_.tile(g(role, "s" + st.pack() + "b" + glue_code(bt.name) +
                               (j == 0 && terminal ? "end" : "")),
                     s, {spec_.comp, spec_.type, j == 0 ? "count-lsd" : "count"});
            faces[static_cast<std::size_t>(j)] = ahead;
            st = nst;
        }
        out = {'A', la_glue(v), pack_q(v), 0, false};
        return faces;
    }

    // first row over the seeding square's fill tapes; A-kind
    RowFaces emit_start_row(std::int64_t w, std::int64_t v, Launch& out) {
        RowFaces faces(static_cast<std::size_t>(w));
        std::string sq = "S:" + tv(spec_.seeder);
        {
            Sides s;
            put(s, spec_.frame, LS::Back, {g("go", "s"), 2});
            put(s, spec_.frame, LS::Near, rend_side(v));
            Face ahead = a_tape_face(v, 0, w);
            put(s, spec_.frame, LS::Ahead, ahead);
            put(s, spec_.frame, LS::Far, {g("vm", "p1"), 1});
            em_.tile(g("vr", "r"), s, {spec_.comp, spec_.type, "count-lsd"});
            faces[0] = ahead;
        }
        for (std::int64_t j = 1; j < w; ++j) {
            bool is_lend = j == w - 1;
            Sides s;
            put(s, spec_.frame, LS::Near, {g("vm", j == 1 ? "p1" : "p2"), 1});
            put(s, spec_.frame, LS::Back, {sq + ":sf:" + (is_lend ? "l" : "m"), 1});
            Face ahead;
            bool afx_excl, vfx_excl;
            row_flags(v, j, afx_excl, vfx_excl);
            if (is_lend)
                ahead = {lb_glue(digit_of(v, c_, j), afx_excl, vfx_excl, w == 2), 2};
            else
                ahead = a_tape_face(v, j, w);
            put(s, spec_.frame, LS::Ahead, ahead);
            if (!is_lend) put(s, spec_.frame, LS::Far, {g("vm", "p2"), 1});
            em_.tile(g("vr", is_lend ? "lf" + flag(afx_excl) + flag(vfx_excl) + flag(w == 2)
                                     : (j == 1 ? "m1" : "m")),
                     s, {spec_.comp, spec_.type, is_lend ? "fiber-edge-count" : "count"});
            faces[static_cast<std::size_t>(j)] = ahead;
        }
        bool afx_excl, vfx_excl;
        row_flags(v, w - 1, afx_excl, vfx_excl);
        out = {'B', lb_glue(digit_of(v, c_, w - 1), afx_excl, vfx_excl, w == 2), 0,
               digit_of(v, c_, w - 1), afx_excl, vfx_excl, w == 2};
        return faces;
    }

    // the attachment entry row (value 1), bound sideways to a spacing group
    RowFaces emit_attached_entry(std::int64_t w) {
        int r = spec_.vertical ? static_cast<int>(spec_.type.y) : static_cast<int>(spec_.type.x);
        std::string shared = spec_.comp + ":(0,0)";
        for (int up = 1; up >= 0; --up) {
            std::string dir = up ? "u" : "d";
            std::string owner = up ? shared : self_;  // marching glue namespace
            std::string march = owner + ":aem:" + dir;
            // host-side glue names; typed ones carry our own type
            std::string host_b = up ? shared + ":ab:u" : self_ + ":ab:d";
            std::string host_m = shared + ":am:" + dir;
            std::string host_t = up ? self_ + ":at:u" : shared + ":at:d";
            {
                Sides s;
                put(s, spec_.frame, LS::Back, {host_b, 2});
                put(s, spec_.frame, LS::Near, {march, 1});
                put(s, spec_.frame, LS::Ahead, {shared + ":aet:l", 1});
                em_.tile(owner + ":ae:" + dir + "l", s,
                         {spec_.comp, up ? Point{0, 0} : spec_.type, "fiber-edge-attach"});
            }
            {
                Sides s;
                put(s, spec_.frame, LS::Back, {host_m, 1});
                put(s, spec_.frame, LS::Far, {march, 1});
                put(s, spec_.frame, LS::Near, {march, 1});
                put(s, spec_.frame, LS::Ahead, {shared + ":aet:m", 1});
                em_.tile(owner + ":ae:" + dir + "m", s,
                         {spec_.comp, up ? Point{0, 0} : spec_.type, "attach"});
            }
            {
                Sides s;
                put(s, spec_.frame, LS::Back, {host_t, 1});
                put(s, spec_.frame, LS::Far, {march, 1});
                put(s, spec_.frame, LS::Near, rend_side(1));
                put(s, spec_.frame, LS::Ahead, {la_glue(1), 2});
                em_.tile(self_ + ":ae:" + dir + "r", s, {spec_.comp, spec_.type, "attach"});
            }
        }
        RowFaces faces(static_cast<std::size_t>(w));
        faces[0] = {la_glue(1), 2};
        for (std::int64_t j = 1; j < w; ++j)
            faces[static_cast<std::size_t>(j)] = {shared + ":aet:" + (j == w - 1 ? "l" : "m"), 1};
        return faces;
    }

    // rows 2..t of a spacing group plus the diagonal
    RowFaces emit_group_rows(std::int64_t w, std::int64_t v, std::int64_t t, const RowFaces& row1,
                             Launch& out) {
        int r = wall_digit(v);
        std::string rq = "q" + std::to_string(r);
        RowFaces below = row1;
        for (std::int64_t k = 2; k <= t; ++k) {
            RowFaces faces(static_cast<std::size_t>(w));
            std::int64_t dpos = t - k + 1;
            bool last = k == t;
            {   // preD above the previous diagonal cell, at dpos + 1
                std::int64_t p = dpos + 1;
                PC cls = class_of(p, w);
                Sides s;
                std::string in = g(k == 2 ? "ds" : "du", rq + pc_name(cls));
                put(s, spec_.frame, LS::Back, {in, 2});
                put(s, spec_.frame, LS::Near, {g("dn", rq), 1});
                if (p < w - 1) put(s, spec_.frame, LS::Far, {gf_glue(v, p + 1), 1});
                Face ahead = a_tape_face(v, p, w);
                put(s, spec_.frame, LS::Ahead, ahead);
                em_.tile(g("pd", std::string(k == 2 ? "w" : "z") + rq + pc_name(cls)), s,
                         {spec_.comp, spec_.type, "spacing"});
                faces[static_cast<std::size_t>(p)] = ahead;
            }
            {   // diagonal cell at dpos
                const Face& bt = below[static_cast<std::size_t>(dpos)];
                Sides s;
                put(s, spec_.frame, LS::Far, {g("dn", rq), 1});
                put(s, spec_.frame, LS::Back, {bt.name, 1});
                Face ahead;
                if (last)
                    ahead = a_tape_face(v, dpos, w);
                else
                    ahead = {g("du", rq + pc_name(class_of(dpos, w))), 2};
                put(s, spec_.frame, LS::Ahead, ahead);
                put(s, spec_.frame, LS::Near, {last ? g("dl", rq) : g("gn", "x"), 1});
                em_.tile(g("dc", std::string(last ? "l" : "m") + rq + "b" + glue_code(bt.name)), s,
                         {spec_.comp, spec_.type, "spacing"});
                faces[static_cast<std::size_t>(dpos)] = ahead;
            }
            for (std::int64_t j = dpos - 1; j >= 0; --j) {  // near zeros
                const Face& bt = below[static_cast<std::size_t>(j)];
                bool diag_adjacent = last && j == dpos - 1;
                Sides s;
                put(s, spec_.frame, LS::Far,
                    {j == dpos - 1 ? (last ? g("dl", rq) : g("gn", "x")) : g("gn", "x"), 1});
                put(s, spec_.frame, LS::Back, {bt.name, 1});
                Face ahead;
                if (j == 0) {
                    // interior group rows carry the weak middle attach face
                    put(s, spec_.frame, LS::Near,
                        diag_adjacent ? rend_side(v, true) : Face{att_untyped("am"), 1});
                    ahead = diag_adjacent ? Face{la_glue(v), 2} : a_tape_face(v, 0, w);
                } else {
                    put(s, spec_.frame, LS::Near, {g("gn", "x"), 1});
                    ahead = a_tape_face(v, j, w);
                }
                put(s, spec_.frame, LS::Ahead, ahead);
                em_.tile(g(j == 0 ? "gz" : "gc",
                           std::string(j == 0 ? (diag_adjacent ? "t" : "m") : "i") +
                               (diag_adjacent ? rq : "") + "b" + glue_code(bt.name)),
                         s, {spec_.comp, spec_.type, "spacing"});
                faces[static_cast<std::size_t>(j)] = ahead;
            }
            for (std::int64_t j = dpos + 2; j < w; ++j) {  // far copies
                const Face& bt = below[static_cast<std::size_t>(j)];
                Sides s;
                put(s, spec_.frame, LS::Near, {gf_glue(v, j), 1});
                put(s, spec_.frame, LS::Back, {bt.name, 1});
                Face ahead = a_tape_face(v, j, w);
                put(s, spec_.frame, LS::Ahead, ahead);
                if (j < w - 1) put(s, spec_.frame, LS::Far, {gf_glue(v, j + 1), 1});
                em_.tile(g("gf", (j == w - 1 ? "e" : "i") + std::string("b") + glue_code(bt.name)),
                         s, {spec_.comp, spec_.type, "spacing"});
                faces[static_cast<std::size_t>(j)] = ahead;
            }
            below = faces;
        }
        out = {'A', la_glue(v), pack_q(v), 0, false};
        return below;
    }

    std::string gf_glue(std::int64_t v, std::int64_t j) const {
        bool afx, vfx;
        row_flags(v, j, afx, vfx);
        return g("gm", "f" + flag(afx) + flag(vfx));
    }

    Emitter& em_;
    CounterSpec spec_;
    std::int64_t c_;
    std::string self_;
    std::string att_comp_;
    int fill_ = 0;
};

}  // namespace gen
}  // namespace fractile::compiler

#include "fractile/compiler_impl2.hpp"
