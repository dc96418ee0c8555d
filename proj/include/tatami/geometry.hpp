#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tatami/error.hpp"

namespace tatami {

// Row 0 is the top row, column 0 the leftmost column.
struct Cell {
  int row = 0;
  int col = 0;

  auto operator<=>(const Cell&) const = default;
};

// The lattice point at the top-left corner of cell (row, col).
struct Vertex {
  int row = 0;
  int col = 0;

  auto operator<=>(const Vertex&) const = default;

  // NW, NE, SW, SE.
  std::array<Cell, 4> incident_cells() const {
    return {Cell{row - 1, col - 1}, Cell{row - 1, col}, Cell{row, col - 1}, Cell{row, col}};
  }
};

inline std::array<Vertex, 4> corners(Cell c) {
  return {Vertex{c.row, c.col}, Vertex{c.row, c.col + 1}, Vertex{c.row + 1, c.col},
          Vertex{c.row + 1, c.col + 1}};
}

// A finite set of unit cells, normalized so that its bounding box starts at (0, 0).
class Region {
 public:
  // Empty placeholder; every factory below yields a nonempty region.
  Region() = default;

  static Region rectangle(int rows, int cols) {
    if (rows <= 0 || cols <= 0) throw Error(ErrorCode::EmptyRegion, "rectangle must be nonempty");
    Region r;
    r.height_ = rows;
    r.width_ = cols;
    r.mask_.assign(static_cast<std::size_t>(rows) * cols, 1);
    r.index_cells();
    return r;
  }

  static Region from_cells(std::span<const Cell> cells) {
    if (cells.empty()) throw Error(ErrorCode::EmptyRegion, "region has no cells");
    int min_r = std::numeric_limits<int>::max(), min_c = min_r;
    int max_r = std::numeric_limits<int>::min(), max_c = max_r;
    for (const Cell& c : cells) {
      min_r = std::min(min_r, c.row);
      min_c = std::min(min_c, c.col);
      max_r = std::max(max_r, c.row);
      max_c = std::max(max_c, c.col);
    }
    Region r;
    r.height_ = max_r - min_r + 1;
    r.width_ = max_c - min_c + 1;
    r.mask_.assign(static_cast<std::size_t>(r.height_) * r.width_, 0);
    for (const Cell& c : cells) r.mask_[r.offset(c.row - min_r, c.col - min_c)] = 1;
    r.index_cells();
    return r;
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int area() const noexcept { return static_cast<int>(cells_.size()); }

  bool contains(int row, int col) const noexcept {
    return row >= 0 && col >= 0 && row < height_ && col < width_ && mask_[offset(row, col)] != 0;
  }
  bool contains(Cell c) const noexcept { return contains(c.row, c.col); }

  // In-region cells in row-major order.
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  bool is_rectangle() const noexcept { return area() == height_ * width_; }

  // A vertex is interior when all four incident cells lie in the region.
  bool is_interior(Vertex v) const noexcept {
    for (const Cell& c : v.incident_cells())
      if (!contains(c)) return false;
    return true;
  }

  std::vector<Vertex> interior_vertices() const {
    std::vector<Vertex> out;
    for (int r = 1; r < height_; ++r)
      for (int c = 1; c < width_; ++c)
        if (is_interior({r, c})) out.push_back({r, c});
    return out;
  }

  // A boundary cell has an edge on the region's outline.
  bool is_boundary_cell(Cell c) const noexcept {
    return contains(c) && (!contains(c.row - 1, c.col) || !contains(c.row + 1, c.col) ||
                           !contains(c.row, c.col - 1) || !contains(c.row, c.col + 1));
  }

  std::size_t offset(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  // Canonical text form: '#' in-region, '.' hole, no trailing holes.
  std::string to_ascii() const {
    std::string out;
    for (int r = 0; r < height_; ++r) {
      std::string line;
      for (int c = 0; c < width_; ++c) line += contains(r, c) ? '#' : '.';
      while (!line.empty() && line.back() == '.') line.pop_back();
      out += line;
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const Region& a, const Region& b) {
    return a.height_ == b.height_ && a.width_ == b.width_ && a.mask_ == b.mask_;
  }

 private:
  void index_cells() {
    cells_.clear();
    for (int r = 0; r < height_; ++r)
      for (int c = 0; c < width_; ++c)
        if (mask_[offset(r, c)]) cells_.push_back({r, c});
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> mask_;
  std::vector<Cell> cells_;
};

// '#' marks an in-region cell; '.' and ' ' are holes. Short lines are padded with holes.
inline Region region_from_ascii(std::string_view text) {
  std::vector<Cell> cells;
  int row = 0, col = 0;
  for (char ch : text) {
    if (ch == '\n') {
      ++row;
      col = 0;
      continue;
    }
    if (ch == '\r') continue;
    if (ch == '#') cells.push_back({row, col});
    ++col;
  }
  if (cells.empty()) throw Error(ErrorCode::EmptyRegion, "region text contains no '#' cell");
  return Region::from_cells(cells);
}

}  // namespace tatami
