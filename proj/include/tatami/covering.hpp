#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "tatami/error.hpp"
#include "tatami/geometry.hpp"

namespace tatami {

enum class TileKind : std::uint8_t { Monomino, HDomino, VDomino };

inline constexpr std::array<TileKind, 3> kAllKinds = {TileKind::Monomino, TileKind::HDomino,
                                                      TileKind::VDomino};

inline const char* to_string(TileKind k) {
  switch (k) {
    case TileKind::Monomino: return "M";
    case TileKind::HDomino: return "H";
    case TileKind::VDomino: return "V";
  }
  return "?";
}

inline std::optional<TileKind> kind_from_string(std::string_view s) {
  if (s == "M" || s == "Monomino") return TileKind::Monomino;
  if (s == "H" || s == "HDomino") return TileKind::HDomino;
  if (s == "V" || s == "VDomino") return TileKind::VDomino;
  return std::nullopt;
}

inline bool is_domino(TileKind k) { return k != TileKind::Monomino; }

inline int tile_size(TileKind k) { return k == TileKind::Monomino ? 1 : 2; }

// Cells spanned by a tile anchored at its top-left cell. The second entry is unused for monominoes.
inline std::array<Cell, 2> spanned_cells(TileKind k, Cell anchor) {
  switch (k) {
    case TileKind::HDomino: return {anchor, Cell{anchor.row, anchor.col + 1}};
    case TileKind::VDomino: return {anchor, Cell{anchor.row + 1, anchor.col}};
    default: return {anchor, anchor};
  }
}

using TileId = std::uint32_t;

struct Tile {
  TileId id = 0;
  TileKind kind = TileKind::Monomino;
  Cell anchor;
  std::optional<std::string> color_tag;

  std::vector<Cell> cell_list() const {
    auto c = spanned_cells(kind, anchor);
    if (kind == TileKind::Monomino) return {c[0]};
    return {c[0], c[1]};
  }

  // Geometry and tag, ignoring the id.
  auto shape_key() const { return std::tie(anchor, kind, color_tag); }
};

class Covering;

struct PlacementVerdict {
  enum class Kind { Legal, OutOfRegion, Overlap, TatamiBlocked };

  Kind kind = Kind::Legal;
  std::vector<Cell> cells;        // OutOfRegion
  std::vector<TileId> tiles;      // Overlap
  std::vector<Vertex> vertices;   // TatamiBlocked

  bool legal() const noexcept { return kind == Kind::Legal; }
};

inline const char* to_string(PlacementVerdict::Kind k) {
  switch (k) {
    case PlacementVerdict::Kind::Legal: return "Legal";
    case PlacementVerdict::Kind::OutOfRegion: return "OutOfRegion";
    case PlacementVerdict::Kind::Overlap: return "Overlap";
    case PlacementVerdict::Kind::TatamiBlocked: return "TatamiBlocked";
  }
  return "?";
}

class IllegalPlacementError : public Error {
 public:
  explicit IllegalPlacementError(PlacementVerdict verdict)
      : Error(ErrorCode::IllegalPlacement,
              std::string("illegal placement: ") + to_string(verdict.kind)),
        verdict_(std::move(verdict)) {}

  const PlacementVerdict& verdict() const noexcept { return verdict_; }

 private:
  PlacementVerdict verdict_;
};

// An immutable set of disjoint tiles on a region that satisfies the tatami law.
class Covering {
 public:
  Covering() = default;

  explicit Covering(Region region)
      : region_(std::make_shared<const Region>(std::move(region))),
        owner_(static_cast<std::size_t>(region_->height()) * region_->width(), 0) {}

  // Builds a covering from explicit tiles, keeping their ids. Tiles with id 0 get fresh ids.
  static Covering from_tiles(Region region, std::span<const Tile> tiles);

  const Region& region() const noexcept { return *region_; }
  std::shared_ptr<const Region> shared_region() const noexcept { return region_; }

  // Sorted by id.
  const std::vector<Tile>& tiles() const noexcept { return tiles_; }
  std::size_t size() const noexcept { return tiles_.size(); }

  // 0 when the cell is empty or out of region.
  TileId owner(Cell c) const noexcept {
    if (!region_->contains(c)) return 0;
    return owner_[region_->offset(c.row, c.col)];
  }
  bool covered(Cell c) const noexcept { return owner(c) != 0; }

  const Tile* find(TileId id) const noexcept {
    auto it = std::lower_bound(tiles_.begin(), tiles_.end(), id,
                               [](const Tile& t, TileId v) { return t.id < v; });
    return (it != tiles_.end() && it->id == id) ? &*it : nullptr;
  }
  const Tile* tile_at(Cell c) const noexcept { return find(owner(c)); }

  int covered_count() const noexcept { return covered_; }
  int uncovered_count() const noexcept { return region_->area() - covered_; }
  TileId next_id() const noexcept { return next_id_; }

  int count(TileKind k) const noexcept {
    return static_cast<int>(
        std::count_if(tiles_.begin(), tiles_.end(), [k](const Tile& t) { return t.kind == k; }));
  }

  // Tiles sorted by (anchor, kind), the order used for canonical comparisons.
  std::vector<Tile> tiles_by_position() const {
    std::vector<Tile> out = tiles_;
    std::sort(out.begin(), out.end(), [](const Tile& a, const Tile& b) {
      return std::tie(a.anchor, a.kind) < std::tie(b.anchor, b.kind);
    });
    return out;
  }

  // Equality is geometric: region plus the tile shapes and tags; ids are ignored.
  friend bool operator==(const Covering& a, const Covering& b) {
    if (!(a.region() == b.region()) || a.tiles_.size() != b.tiles_.size()) return false;
    auto ta = a.tiles_by_position();
    auto tb = b.tiles_by_position();
    for (std::size_t i = 0; i < ta.size(); ++i)
      if (ta[i].shape_key() != tb[i].shape_key()) return false;
    return true;
  }

  friend Covering place(const Covering&, TileKind, Cell, std::optional<std::string>);
  friend Covering remove(const Covering&, TileId);

 private:
  void insert(Tile t) {
    for (const Cell& c : t.cell_list()) owner_[region_->offset(c.row, c.col)] = t.id;
    covered_ += tile_size(t.kind);
    next_id_ = std::max(next_id_, t.id + 1);
    auto it = std::lower_bound(tiles_.begin(), tiles_.end(), t.id,
                               [](const Tile& x, TileId v) { return x.id < v; });
    tiles_.insert(it, std::move(t));
  }

  std::shared_ptr<const Region> region_ = std::make_shared<const Region>();
  std::vector<Tile> tiles_;
  std::vector<TileId> owner_;
  TileId next_id_ = 1;
  int covered_ = 0;
};

namespace detail {

// Distinct tile ids among the four cells of an interior vertex, or 0 if any cell is empty.
template <class OwnerFn>
int distinct_if_full(const Region& region, Vertex v, OwnerFn owner) {
  std::array<TileId, 4> ids{};
  int n = 0;
  for (const Cell& c : v.incident_cells()) {
    if (!region.contains(c)) return 0;
    TileId id = owner(c);
    if (id == 0) return 0;
    ids[n++] = id;
  }
  std::sort(ids.begin(), ids.end());
  return static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

}  // namespace detail

inline PlacementVerdict can_place(const Covering& covering, TileKind kind, Cell anchor) {
  const Region& region = covering.region();
  PlacementVerdict v;
  auto spanned = spanned_cells(kind, anchor);
  const int n = tile_size(kind);

  for (int i = 0; i < n; ++i)
    if (!region.contains(spanned[i])) v.cells.push_back(spanned[i]);
  if (!v.cells.empty()) {
    v.kind = PlacementVerdict::Kind::OutOfRegion;
    return v;
  }

  for (int i = 0; i < n; ++i) {
    TileId id = covering.owner(spanned[i]);
    if (id != 0 && std::find(v.tiles.begin(), v.tiles.end(), id) == v.tiles.end())
      v.tiles.push_back(id);
  }
  if (!v.tiles.empty()) {
    v.kind = PlacementVerdict::Kind::Overlap;
    return v;
  }

  // The new tile gets an id no existing tile can have.
  const TileId fresh = std::numeric_limits<TileId>::max();
  auto owner = [&](Cell c) -> TileId {
    for (int i = 0; i < n; ++i)
      if (spanned[i] == c) return fresh;
    return covering.owner(c);
  };
  for (int i = 0; i < n; ++i)
    for (const Vertex& vx : corners(spanned[i]))
      if (detail::distinct_if_full(region, vx, owner) == 4 &&
          std::find(v.vertices.begin(), v.vertices.end(), vx) == v.vertices.end())
        v.vertices.push_back(vx);
  if (!v.vertices.empty()) {
    std::sort(v.vertices.begin(), v.vertices.end());
    v.kind = PlacementVerdict::Kind::TatamiBlocked;
  }
  return v;
}

inline Covering place(const Covering& covering, TileKind kind, Cell anchor,
                      std::optional<std::string> color_tag = std::nullopt) {
  PlacementVerdict verdict = can_place(covering, kind, anchor);
  if (!verdict.legal()) throw IllegalPlacementError(std::move(verdict));
  Covering next = covering;
  next.insert(Tile{covering.next_id(), kind, anchor, std::move(color_tag)});
  return next;
}

inline Covering remove(const Covering& covering, TileId id) {
  const Tile* t = covering.find(id);
  if (!t) throw Error(ErrorCode::UnknownTile, "no tile with id " + std::to_string(id));
  Covering next = covering;
  for (const Cell& c : t->cell_list())
    next.owner_[next.region_->offset(c.row, c.col)] = 0;
  next.covered_ -= tile_size(t->kind);
  next.tiles_.erase(next.tiles_.begin() + (t - covering.tiles_.data()));
  return next;
}

// Vertices at which four distinct tiles meet. Tiles must lie in the region and be disjoint.
inline std::vector<Vertex> violations(const Region& region, std::span<const Tile> tiles) {
  std::vector<TileId> owner(static_cast<std::size_t>(region.height()) * region.width(), 0);
  for (std::size_t i = 0; i < tiles.size(); ++i)
    for (const Cell& c : tiles[i].cell_list())
      if (region.contains(c)) owner[region.offset(c.row, c.col)] = static_cast<TileId>(i + 1);
  std::vector<Vertex> out;
  for (const Vertex& v : region.interior_vertices())
    if (detail::distinct_if_full(region, v, [&](Cell c) {
          return owner[region.offset(c.row, c.col)];
        }) == 4)
      out.push_back(v);
  return out;
}

inline std::vector<Vertex> violations(const Covering& covering) {
  return violations(covering.region(), covering.tiles());
}

inline bool is_complete(const Covering& covering) { return covering.uncovered_count() == 0; }

inline Covering Covering::from_tiles(Region region, std::span<const Tile> tiles) {
  Covering c(std::move(region));
  TileId next = 1;
  for (const Tile& t : tiles) next = std::max(next, t.id + 1);
  for (const Tile& t : tiles) {
    PlacementVerdict v = can_place(c, t.kind, t.anchor);
    if (!v.legal()) throw IllegalPlacementError(std::move(v));
    Tile copy = t;
    if (copy.id == 0 || c.find(copy.id)) copy.id = next++;
    c.insert(std::move(copy));
  }
  c.next_id_ = std::max(c.next_id_, next);
  return c;
}

}  // namespace tatami
