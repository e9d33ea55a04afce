#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fractile/error.hpp"
#include "fractile/geom.hpp"

namespace fractile::tam {

// A glue is a (color, strength) pair. Color 0 is the null label; null glues
// never bind regardless of strength.
struct Glue {
    std::int32_t color = 0;
    std::int32_t strength = 0;

    friend constexpr bool operator==(const Glue&, const Glue&) = default;
};

struct TileType {
    std::string name;
    std::array<Glue, 4> sides{};  // indexed by Dir

    const Glue& side(Dir d) const { return sides[static_cast<int>(d)]; }
    Glue& side(Dir d) { return sides[static_cast<int>(d)]; }
};

// Two abutting sides bind only when both carry the same non-null color and
// the same strength; the bond weight is that common strength.
inline std::int32_t bond_strength(const Glue& a, const Glue& b) {
    if (a.color == 0 || b.color == 0) return 0;
    if (a.color != b.color || a.strength != b.strength) return 0;
    return a.strength;
}

class TileSet {
  public:
    TileSet() { color_names_.push_back(""); }

    std::int32_t intern_color(const std::string& name) {
        if (name.empty()) return 0;
        auto [it, fresh] = color_ids_.try_emplace(name, static_cast<std::int32_t>(color_names_.size()));
        if (fresh) color_names_.push_back(name);
        return it->second;
    }
    const std::string& color_name(std::int32_t id) const { return color_names_.at(id); }
    std::int32_t find_color(const std::string& name) const {
        auto it = color_ids_.find(name);
        return it == color_ids_.end() ? -1 : it->second;
    }

    int add_tile(TileType t) {
        if (tile_ids_.contains(t.name)) throw Error(Errc::BadInput, "duplicate tile name " + t.name);
        int id = static_cast<int>(tiles_.size());
        tile_ids_.emplace(t.name, id);
        tiles_.push_back(std::move(t));
        index_dirty_ = true;
        return id;
    }

    // Convenience: sides given as (color string, strength) in N,E,S,W order.
    int add_tile(const std::string& name, std::pair<std::string, int> n,
                 std::pair<std::string, int> e, std::pair<std::string, int> s,
                 std::pair<std::string, int> w) {
        TileType t;
        t.name = name;
        t.side(Dir::N) = {intern_color(n.first), n.second};
        t.side(Dir::E) = {intern_color(e.first), e.second};
        t.side(Dir::S) = {intern_color(s.first), s.second};
        t.side(Dir::W) = {intern_color(w.first), w.second};
        return add_tile(std::move(t));
    }

    std::size_t size() const { return tiles_.size(); }
    bool empty() const { return tiles_.empty(); }
    const TileType& operator[](int id) const { return tiles_[static_cast<std::size_t>(id)]; }
    const std::vector<TileType>& tiles() const { return tiles_; }
    int find(const std::string& name) const {
        auto it = tile_ids_.find(name);
        return it == tile_ids_.end() ? -1 : it->second;
    }

    // Tiles whose side `d` carries glue (color, strength). Used to enumerate
    // attachment candidates without scanning the whole tile set.
    const std::vector<int>& tiles_with(Dir d, const Glue& g) const {
        rebuild_index();
        static const std::vector<int> none;
        auto it = side_index_.find(key(d, g));
        return it == side_index_.end() ? none : it->second;
    }

  private:
    static std::uint64_t key(Dir d, const Glue& g) {
        return (static_cast<std::uint64_t>(d) << 48) ^
               (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g.color)) << 8) ^
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(g.strength));
    }
    void rebuild_index() const {
        if (!index_dirty_) return;
        side_index_.clear();
        for (int id = 0; id < static_cast<int>(tiles_.size()); ++id) {
            for (Dir d : all_dirs) {
                const Glue& g = tiles_[static_cast<std::size_t>(id)].side(d);
                if (g.color != 0 && g.strength > 0) side_index_[key(d, g)].push_back(id);
            }
        }
        index_dirty_ = false;
    }

    std::vector<TileType> tiles_;
    std::unordered_map<std::string, int> tile_ids_;
    std::vector<std::string> color_names_;
    std::unordered_map<std::string, std::int32_t> color_ids_;
    mutable std::unordered_map<std::uint64_t, std::vector<int>> side_index_;
    mutable bool index_dirty_ = true;
};

// A finite configuration: tile indices placed on grid points.
struct Assembly {
    PointMap<int> placements;

    bool occupied(Point p) const { return placements.contains(p); }
    int at(Point p) const {
        auto it = placements.find(p);
        return it == placements.end() ? -1 : it->second;
    }
    std::size_t size() const { return placements.size(); }
};

struct TAS {
    TileSet tiles;
    Assembly seed;
    int tau = 2;
};

}  // namespace fractile::tam
