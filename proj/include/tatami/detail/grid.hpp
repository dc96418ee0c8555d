#pragma once

#include <cstdint>
#include <vector>

#include "tatami/covering.hpp"
#include "tatami/geometry.hpp"

namespace tatami::detail {

struct Placed {
  TileKind kind;
  int row;
  int col;
};

// Mutable board with LIFO undo, used by every search in the library. Storage carries a one-cell
// border of out-of-region sentinels so neighbourhood probes never need bounds checks.
class Grid {
 public:
  static constexpr int kOut = -2;
  static constexpr int kEmpty = -1;

  explicit Grid(const Region& region)
      : height_(region.height()), width_(region.width()), stride_(region.width() + 2),
        owner_(static_cast<std::size_t>(region.height() + 3) * (region.width() + 2), kOut) {
    for (const Cell& c : region.cells()) owner_[at(c.row, c.col)] = kEmpty;
    empty_ = region.area();
    placed_.reserve(static_cast<std::size_t>(region.area()));
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }

  // Valid for -1 <= row <= height, -1 <= col <= width.
  int owner(int row, int col) const noexcept { return owner_[at(row, col)]; }
  bool in_region(int row, int col) const noexcept {
    return row >= -1 && row <= height_ && col >= -1 && col <= width_ && owner(row, col) != kOut;
  }
  bool is_empty(int row, int col) const noexcept { return owner(row, col) == kEmpty; }

  int empty_count() const noexcept { return empty_; }
  int size() const noexcept { return static_cast<int>(placed_.size()); }
  const Placed& tile(int i) const noexcept { return placed_[static_cast<std::size_t>(i)]; }
  const std::vector<Placed>& placed() const noexcept { return placed_; }

  // True when the three cells of the vertex other than `skip` hold three distinct tiles.
  // Vertex (vr, vc) has cells (vr-1, vc-1), (vr-1, vc), (vr, vc-1), (vr, vc); skip indexes them.
  bool three_distinct_around(int vr, int vc, int skip) const noexcept {
    int ids[3];
    int n = 0;
    for (int q = 0; q < 4; ++q) {
      if (q == skip) continue;
      int id = owner(vr - 1 + (q >> 1), vc - 1 + (q & 1));
      if (id < 0) return false;
      ids[n++] = id;
    }
    return ids[0] != ids[1] && ids[0] != ids[2] && ids[1] != ids[2];
  }

  // Cells must be empty and no outer corner of the tile may see three distinct tiles.
  bool legal(TileKind kind, int row, int col) const noexcept {
    if (row < 0 || col < 0 || row >= height_ || col >= width_) return false;
    if (!is_empty(row, col)) return false;
    switch (kind) {
      case TileKind::Monomino:
        return !three_distinct_around(row, col, 3) && !three_distinct_around(row, col + 1, 2) &&
               !three_distinct_around(row + 1, col, 1) &&
               !three_distinct_around(row + 1, col + 1, 0);
      case TileKind::HDomino:
        if (!is_empty(row, col + 1)) return false;
        return !three_distinct_around(row, col, 3) && !three_distinct_around(row + 1, col, 1) &&
               !three_distinct_around(row, col + 2, 2) &&
               !three_distinct_around(row + 1, col + 2, 0);
      case TileKind::VDomino:
        if (!is_empty(row + 1, col)) return false;
        return !three_distinct_around(row, col, 3) && !three_distinct_around(row, col + 1, 2) &&
               !three_distinct_around(row + 2, col, 1) &&
               !three_distinct_around(row + 2, col + 1, 0);
    }
    return false;
  }

  int place(TileKind kind, int row, int col) noexcept {
    int id = size();
    placed_.push_back({kind, row, col});
    set(kind, row, col, id);
    empty_ -= tile_size(kind);
    return id;
  }

  void undo() noexcept {
    const Placed p = placed_.back();
    placed_.pop_back();
    set(p.kind, p.row, p.col, kEmpty);
    empty_ += tile_size(p.kind);
  }

  // First empty cell at or after the row-major index `from`; -1 if none.
  int first_empty(int from = 0) const noexcept {
    for (int i = from; i < height_ * width_; ++i)
      if (is_empty(i / width_, i % width_)) return i;
    return -1;
  }

 private:
  std::size_t at(int row, int col) const noexcept {
    return static_cast<std::size_t>(row + 1) * stride_ + static_cast<std::size_t>(col + 1);
  }

  void set(TileKind kind, int row, int col, int value) noexcept {
    owner_[at(row, col)] = value;
    if (kind == TileKind::HDomino) owner_[at(row, col + 1)] = value;
    if (kind == TileKind::VDomino) owner_[at(row + 1, col)] = value;
  }

  int height_;
  int width_;
  int stride_;
  std::vector<int> owner_;
  std::vector<Placed> placed_;
  int empty_ = 0;
};

// Loads a covering's tiles into a grid in id order.
inline Grid grid_from(const Covering& covering) {
  Grid g(covering.region());
  for (const Tile& t : covering.tiles()) g.place(t.kind, t.anchor.row, t.anchor.col);
  return g;
}

}  // namespace tatami::detail
