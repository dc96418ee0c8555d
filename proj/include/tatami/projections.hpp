#pragma once

#include <compare>
#include <vector>

#include "tatami/covering.hpp"
#include "tatami/error.hpp"

namespace tatami {

// Squares of one row or column covered by vertical dominoes, horizontal dominoes, monominoes.
struct Triple {
  int v = 0;
  int h = 0;
  int m = 0;

  int total() const noexcept { return v + h + m; }
  auto operator<=>(const Triple&) const = default;
};

struct Projections {
  std::vector<Triple> rows;
  std::vector<Triple> cols;

  bool operator==(const Projections&) const = default;

  // Necessary conditions for some covering of a rows x cols rectangle to realize these triples.
  bool consistent() const {
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(cols.size());
    if (r == 0 || c == 0) return false;
    Triple sr, sc;
    for (const Triple& t : rows) {
      if (t.v < 0 || t.h < 0 || t.m < 0 || t.total() != c || t.h % 2 != 0) return false;
      sr.v += t.v;
      sr.h += t.h;
      sr.m += t.m;
    }
    for (const Triple& t : cols) {
      if (t.v < 0 || t.h < 0 || t.m < 0 || t.total() != r || t.v % 2 != 0) return false;
      sc.v += t.v;
      sc.h += t.h;
      sc.m += t.m;
    }
    return sr == sc;
  }
};

inline void add_to_projections(Projections& p, TileKind kind, Cell a, int sign = 1) {
  switch (kind) {
    case TileKind::Monomino:
      p.rows[a.row].m += sign;
      p.cols[a.col].m += sign;
      break;
    case TileKind::HDomino:
      p.rows[a.row].h += 2 * sign;
      p.cols[a.col].h += sign;
      p.cols[a.col + 1].h += sign;
      break;
    case TileKind::VDomino:
      p.rows[a.row].v += sign;
      p.rows[a.row + 1].v += sign;
      p.cols[a.col].v += 2 * sign;
      break;
  }
}

inline Projections empty_projections(int rows, int cols) {
  return Projections{std::vector<Triple>(static_cast<std::size_t>(rows)),
                     std::vector<Triple>(static_cast<std::size_t>(cols))};
}

// Row and column triples of a covering of a rectangle. Partial coverings count what is placed.
inline Projections projections(const Covering& covering) {
  const Region& region = covering.region();
  if (!region.is_rectangle())
    throw Error(ErrorCode::NonRectangular, "projections are defined on rectangles only");
  Projections p = empty_projections(region.height(), region.width());
  for (const Tile& t : covering.tiles()) add_to_projections(p, t.kind, t.anchor);
  return p;
}

}  // namespace tatami
