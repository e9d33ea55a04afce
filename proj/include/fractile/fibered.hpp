#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fractile/error.hpp"
#include "fractile/fractal.hpp"
#include "fractile/geom.hpp"

namespace fractile::fibered {

using fractal::GeneratorSet;

// Edge length of stage i of the fibered construction: l(0) = c^2 + 1,
// l(i+1) = c*l(i) + 1.
inline std::int64_t edge_length(std::int64_t c, std::int64_t i) {
    std::int64_t l = c * c + 1;
    for (std::int64_t k = 0; k < i; ++k) l = c * l + 1;
    return l;
}

struct FiberStage {
    std::int64_t index = 0;
    PointSet T;
    PointSet F;
};

struct Discrepancy {
    std::string name;
    std::int64_t measured = 0;
    std::int64_t recurrence = 0;
};

struct Metrics {
    std::int64_t i = 0;
    std::int64_t l_measured = 0, f_measured = 0, t_measured = 0;
    std::int64_t l_rec = 0, f_rec = 0, t_rec = 0;
    // Alternate reading of the t recurrence with the zero vector excluded
    // from |V|; neither reading matches the sets, both are reported.
    std::int64_t t_rec_excl_origin = 0;
    std::vector<Discrepancy> discrepancies;
};

// Materializes the fibered stages.
//
// The stage sets follow the published recurrences with two corrections that
// make the whole system self-consistent (straight edges of length l(i),
// f(0) = 2c^2+1, and a fibered set with the same zeta-dimension as the plain
// fractal):
//   * F_0 spans index range {-1..c^2-1}, not {-1..c^2};
//   * the translate set in T_{i+1} ranges over V minus the origin, so fibers
//     enter T only as parts of translated blocks.
// "Block i" below is T_i u F_i, a straight-edged square of side l(i) whose
// corner sits at (-(i+1), -(i+1)).
class Model {
  public:
    explicit Model(GeneratorSet g, std::int64_t cap = fractal::kDefaultStageCap)
        : g_(std::move(g)), cap_(cap) {
        if (!fractal::is_nice(g_)) throw Error(Errc::NotNice, "fibered stages need a nice generator");
    }

    const GeneratorSet& generator() const { return g_; }

    // Tag per point: -1 for points of the underlying fractal stages, k >= 0
    // for points contributed by the fiber layer added at step k. Tags ride
    // along under translation, so translated fiber copies keep their scale.
    const PointMap<int>& block(std::int64_t i) { ensure(i); return blocks_[i]; }
    const PointMap<int>& stage_T(std::int64_t i) { ensure(i); return ts_[i]; }
    const PointMap<int>& stage_F(std::int64_t i) { ensure(i); return fs_[i]; }

    FiberStage fiber_stage(std::int64_t i) {
        ensure(i);
        FiberStage st;
        st.index = i;
        for (auto& [p, tag] : ts_[i]) st.T.insert(p);
        for (auto& [p, tag] : fs_[i]) st.F.insert(p);
        return st;
    }

    Metrics metrics(std::int64_t i) {
        ensure(i);
        const std::int64_t c = g_.c;
        Metrics m;
        m.i = i;
        m.l_rec = edge_length(c, i);
        m.f_rec = 2 * c * c + 1;
        for (std::int64_t k = 1; k <= i; ++k) m.f_rec += c * edge_length(c, k) - 1;
        m.l_measured = measure_left_edge(i);
        m.f_measured = static_cast<std::int64_t>(fs_[i].size());
        m.t_measured = static_cast<std::int64_t>(ts_[i].size());
        const auto nv = static_cast<std::int64_t>(g_.points.size());
        if (i == 0) {
            m.t_rec = (nv + 1) * (nv + 1);
            m.t_rec_excl_origin = nv * nv;
        } else {
            Metrics prev = metrics(i - 1);
            m.t_rec = nv * prev.t_measured + prev.f_measured;
            m.t_rec_excl_origin = (nv - 1) * prev.t_measured + prev.f_measured;
        }
        if (m.l_measured != m.l_rec) m.discrepancies.push_back({"l", m.l_measured, m.l_rec});
        if (m.f_measured != m.f_rec) m.discrepancies.push_back({"f", m.f_measured, m.f_rec});
        if (m.t_measured != m.t_rec) m.discrepancies.push_back({"t", m.t_measured, m.t_rec});
        if (m.t_measured != m.t_rec_excl_origin)
            m.discrepancies.push_back({"t-excl-origin", m.t_measured, m.t_rec_excl_origin});
        return m;
    }

    // Smallest stage index whose content is final inside `window`. Later
    // stages only add points with max coordinate >= l(k) - (k+1).
    std::int64_t stage_covering(const Rect& window) const {
        std::int64_t hi = std::max(window.x1, window.y1);
        std::int64_t k = 0;
        while (edge_length(g_.c, k) - (k + 2) < hi) ++k;
        return k;
    }

    PointSet window(const Rect& w) {
        PointSet out;
        if (w.empty()) return out;
        std::int64_t k = stage_covering(w);
        ensure(k);
        for (auto& [p, tag] : ts_[k])
            if (w.contains(p)) out.insert(p);
        return out;
    }

    PointMap<int> window_tagged(const Rect& w) {
        PointMap<int> out;
        if (w.empty()) return out;
        std::int64_t k = stage_covering(w);
        ensure(k);
        for (auto& [p, tag] : ts_[k])
            if (w.contains(p)) out.emplace(p, tag);
        return out;
    }

  private:
    std::int64_t measure_left_edge(std::int64_t i) {
        const auto& blk = blocks_[i];
        std::int64_t x0 = -(i + 1);
        std::int64_t y = -(i + 1);
        while (blk.contains(Point{x0, y})) ++y;
        return y + (i + 1);
    }

    void ensure(std::int64_t i) {
        if (i < 0) throw Error(Errc::BadInput, "stage index must be nonnegative");
        if (blocks_.empty()) {
            auto t0 = fractal::stage(g_, 2, cap_).points;
            PointMap<int> t, f, blk;
            for (Point p : t0) t.emplace(p, -1);
            const std::int64_t c2 = g_.c * g_.c;
            for (std::int64_t k = -1; k < c2; ++k) {
                f.emplace(Point{-1, k}, 0);
                f.emplace(Point{k, -1}, 0);
            }
            blk = t;
            for (auto& [p, tag] : f) blk.emplace(p, tag);
            ts_.push_back(std::move(t));
            fs_.push_back(std::move(f));
            blocks_.push_back(std::move(blk));
        }
        while (static_cast<std::int64_t>(blocks_.size()) <= i) {
            std::int64_t j = static_cast<std::int64_t>(blocks_.size()) - 1;  // building j+1
            std::int64_t lj = edge_length(g_.c, j);
            const auto& blk = blocks_[j];
            PointMap<int> t = ts_[j];
            for (Point v : g_.points) {
                if (v == Point{0, 0}) continue;
                Point off = v * lj;
                for (auto& [p, tag] : blk) t.emplace(p + off, tag);
                if (static_cast<std::int64_t>(t.size()) > cap_)
                    throw Error(Errc::ResourceLimit, "fibered stage exceeds point budget");
            }
            PointMap<int> f = fs_[j];
            std::int64_t lj1 = edge_length(g_.c, j + 1);
            std::int64_t lo = -(j + 2), hi = lj1 - (j + 3);
            for (std::int64_t k = lo; k <= hi; ++k) {
                f.emplace(Point{lo, k}, static_cast<int>(j + 1));
                f.emplace(Point{k, lo}, static_cast<int>(j + 1));
            }
            PointMap<int> nblk = t;
            for (auto& [p, tag] : f) nblk.emplace(p, tag);
            if (static_cast<std::int64_t>(nblk.size()) > cap_)
                throw Error(Errc::ResourceLimit, "fibered stage exceeds point budget");
            ts_.push_back(std::move(t));
            fs_.push_back(std::move(f));
            blocks_.push_back(std::move(nblk));
        }
    }

    GeneratorSet g_;
    std::int64_t cap_;
    std::vector<PointMap<int>> blocks_, ts_, fs_;
};

inline FiberStage fiber_stage(const GeneratorSet& g, std::int64_t i,
                              std::int64_t cap = fractal::kDefaultStageCap) {
    Model m(g, cap);
    return m.fiber_stage(i);
}

inline Metrics metrics(const GeneratorSet& g, std::int64_t i,
                       std::int64_t cap = fractal::kDefaultStageCap) {
    Model m(g, cap);
    return m.metrics(i);
}

inline PointSet fibered_window(const GeneratorSet& g, const Rect& w,
                               std::int64_t cap = fractal::kDefaultStageCap) {
    Model m(g, cap);
    return m.window(w);
}

}  // namespace fractile::fibered
