#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tatami/deduction.hpp"
#include "tatami/detail/grid.hpp"
#include "tatami/projections.hpp"

namespace tatami {

// Side constraints a search must respect. Unset fields are unconstrained.
struct SearchConstraints {
  std::array<bool, 3> allowed{true, true, true};  // indexed by TileKind
  std::optional<int> exact_monominoes;
  std::optional<int> exact_hdominoes;
  std::optional<int> exact_vdominoes;
  std::optional<int> max_monominoes;
  std::optional<int> max_dominoes;
  std::optional<Projections> projections;

  bool allows(TileKind k) const noexcept { return allowed[static_cast<int>(k)]; }
};

struct SearchStats {
  std::uint64_t nodes = 0;       // tiles placed by choice
  std::uint64_t backtracks = 0;  // choice tiles retracted
  std::uint64_t forced = 0;      // tiles placed by deduction
};

namespace detail {

// Tracks running counts so that placements exceeding a target are rejected up front.
class ConstraintPolicy {
 public:
  ConstraintPolicy(const Region& region, SearchConstraints constraints)
      : c_(std::move(constraints)) {
    if (c_.projections) running_ = empty_projections(region.height(), region.width());
    global_ = c_.projections.has_value() || c_.exact_monominoes || c_.exact_hdominoes ||
              c_.exact_vdominoes || c_.max_monominoes || c_.max_dominoes;
  }

  const SearchConstraints& constraints() const noexcept { return c_; }

  // Whether candidate filtering depends on state outside a tile's neighbourhood.
  bool global() const noexcept { return global_; }

  bool allows(TileKind k) const noexcept { return c_.allows(k); }

  bool admissible(TileKind k, int row, int col) const noexcept {
    if (!c_.allows(k)) return false;
    const int ki = static_cast<int>(k);
    if (k == TileKind::Monomino) {
      if (c_.max_monominoes && count_[ki] + 1 > *c_.max_monominoes) return false;
      if (c_.exact_monominoes && count_[ki] + 1 > *c_.exact_monominoes) return false;
    } else {
      if (c_.max_dominoes && count_[1] + count_[2] + 1 > *c_.max_dominoes) return false;
      if (k == TileKind::HDomino && c_.exact_hdominoes && count_[ki] + 1 > *c_.exact_hdominoes)
        return false;
      if (k == TileKind::VDomino && c_.exact_vdominoes && count_[ki] + 1 > *c_.exact_vdominoes)
        return false;
    }
    if (c_.projections) {
      const auto& tr = c_.projections->rows;
      const auto& tc = c_.projections->cols;
      const auto& rr = running_->rows;
      const auto& rc = running_->cols;
      switch (k) {
        case TileKind::Monomino:
          if (rr[row].m + 1 > tr[row].m || rc[col].m + 1 > tc[col].m) return false;
          break;
        case TileKind::HDomino:
          if (rr[row].h + 2 > tr[row].h || rc[col].h + 1 > tc[col].h ||
              rc[col + 1].h + 1 > tc[col + 1].h)
            return false;
          break;
        case TileKind::VDomino:
          if (rc[col].v + 2 > tc[col].v || rr[row].v + 1 > tr[row].v ||
              rr[row + 1].v + 1 > tr[row + 1].v)
            return false;
          break;
      }
    }
    return true;
  }

  void on_place(TileKind k, int row, int col) {
    ++count_[static_cast<int>(k)];
    if (running_) add_to_projections(*running_, k, {row, col}, 1);
  }
  void on_undo(TileKind k, int row, int col) {
    --count_[static_cast<int>(k)];
    if (running_) add_to_projections(*running_, k, {row, col}, -1);
  }

  // Cheap necessary condition for the remaining empty cells to be completable.
  bool feasible(int empty) const noexcept {
    int mono_needed = c_.exact_monominoes ? *c_.exact_monominoes - count_[0] : 0;
    int dom_cells = 0;
    if (c_.exact_hdominoes) dom_cells += 2 * (*c_.exact_hdominoes - count_[1]);
    if (c_.exact_vdominoes) dom_cells += 2 * (*c_.exact_vdominoes - count_[2]);
    if (mono_needed + dom_cells > empty) return false;
    if (c_.exact_monominoes && c_.exact_hdominoes && c_.exact_vdominoes)
      return mono_needed + dom_cells == empty;
    bool mono_closed = !c_.allows(TileKind::Monomino) ||
                       (c_.max_monominoes && count_[0] >= *c_.max_monominoes) ||
                       (c_.exact_monominoes && count_[0] >= *c_.exact_monominoes);
    if (c_.exact_monominoes) {
      if ((empty - mono_needed) % 2 != 0) return false;
    } else if (mono_closed && empty % 2 != 0) {
      return false;
    }
    if (c_.max_dominoes) {
      int dom_left = *c_.max_dominoes - count_[1] - count_[2];
      int max_cover = 2 * dom_left;
      if (!mono_closed) {
        int mono_left = c_.max_monominoes ? *c_.max_monominoes - count_[0] : empty;
        if (c_.exact_monominoes) mono_left = mono_needed;
        max_cover += mono_left;
      }
      if (max_cover < empty) return false;
    }
    return true;
  }

  // Exact check on a complete board.
  bool accept() const noexcept {
    if (c_.exact_monominoes && count_[0] != *c_.exact_monominoes) return false;
    if (c_.exact_hdominoes && count_[1] != *c_.exact_hdominoes) return false;
    if (c_.exact_vdominoes && count_[2] != *c_.exact_vdominoes) return false;
    if (c_.projections && *running_ != *c_.projections) return false;
    return true;
  }

 private:
  SearchConstraints c_;
  std::array<int, 3> count_{0, 0, 0};
  std::optional<Projections> running_;
  bool global_ = false;
};

struct RuleHit {
  enum class Type { None, Force, Contra };
  Type type = Type::None;
  TileKind kind = TileKind::Monomino;
  int row = 0;
  int col = 0;
  Vertex cause;
  Contradiction::Reason reason = Contradiction::Reason::FourMeet;
  std::optional<Cell> cell;
};

// Vertex rule. With all four cells in region: three distinct tiles beside one empty cell, or two
// distinct tiles beside two diagonal empty cells, admit no completion; two distinct tiles beside
// two adjacent empty cells force the domino covering that pair.
template <class Policy>
RuleHit vertex_rule(const Grid& g, const Policy& p, int vr, int vc) {
  RuleHit hit;
  int o[4];
  for (int q = 0; q < 4; ++q) {
    o[q] = g.owner(vr - 1 + (q >> 1), vc - 1 + (q & 1));
    if (o[q] == Grid::kOut) return hit;
  }
  int covered = 0, empties = 0;
  int e[4];
  for (int q = 0; q < 4; ++q) {
    if (o[q] >= 0)
      ++covered;
    else
      e[empties++] = q;
  }
  auto distinct_covered = [&] {
    int ids[4], n = 0;
    for (int q = 0; q < 4; ++q) {
      if (o[q] < 0) continue;
      bool seen = false;
      for (int i = 0; i < n; ++i) seen |= ids[i] == o[q];
      if (!seen) ids[n++] = o[q];
    }
    return n;
  };
  hit.cause = {vr, vc};
  if (covered == 3 && distinct_covered() == 3) {
    hit.type = RuleHit::Type::Contra;
    return hit;
  }
  if (covered != 2 || distinct_covered() != 2) return hit;
  const int a = e[0], b = e[1];
  // Quadrants: 0 NW, 1 NE, 2 SW, 3 SE.
  if ((a == 0 && b == 3) || (a == 1 && b == 2)) {
    hit.type = RuleHit::Type::Contra;
    return hit;
  }
  const bool horizontal = (a >> 1) == (b >> 1);
  const int row = vr - 1 + (a >> 1);
  const int col = vc - 1 + (a & 1);
  const TileKind k = horizontal ? TileKind::HDomino : TileKind::VDomino;
  if (!g.legal(k, row, col) || !p.admissible(k, row, col)) {
    hit.type = RuleHit::Type::Contra;
    return hit;
  }
  hit.type = RuleHit::Type::Force;
  hit.kind = k;
  hit.row = row;
  hit.col = col;
  return hit;
}

// Cell rule: an empty cell with no admissible tile is a contradiction; with exactly one, that
// tile is forced.
template <class Policy>
RuleHit cell_rule(const Grid& g, const Policy& p, int row, int col) {
  RuleHit hit;
  if (!g.is_empty(row, col)) return hit;
  struct Cand {
    TileKind k;
    int r, c;
  };
  const Cand cands[5] = {{TileKind::VDomino, row - 1, col},
                         {TileKind::VDomino, row, col},
                         {TileKind::HDomino, row, col - 1},
                         {TileKind::HDomino, row, col},
                         {TileKind::Monomino, row, col}};
  int n = 0;
  Cand only{};
  for (const Cand& cd : cands) {
    if (g.legal(cd.k, cd.r, cd.c) && p.admissible(cd.k, cd.r, cd.c)) {
      if (++n > 1) return hit;
      only = cd;
    }
  }
  hit.cause = {row, col};
  if (n == 0) {
    hit.type = RuleHit::Type::Contra;
    hit.reason = Contradiction::Reason::UncoverableCell;
    hit.cell = Cell{row, col};
    return hit;
  }
  hit.type = RuleHit::Type::Force;
  hit.kind = only.k;
  hit.row = only.r;
  hit.col = only.c;
  return hit;
}

// Grid plus constraint policy plus incremental propagation to a deduction fixpoint.
template <class Policy = ConstraintPolicy>
class Engine {
 public:
  Engine(const Region& region, Policy policy)
      : grid_(region), policy_(std::move(policy)),
        vdirty_(static_cast<std::size_t>(region.height() + 1) * (region.width() + 1), 0),
        cdirty_(static_cast<std::size_t>(region.height()) * region.width(), 0) {}

  Grid& grid() noexcept { return grid_; }
  const Grid& grid() const noexcept { return grid_; }
  Policy& policy() noexcept { return policy_; }
  const Policy& policy() const noexcept { return policy_; }

  bool admissible(TileKind k, int row, int col) const {
    return grid_.legal(k, row, col) && policy_.admissible(k, row, col);
  }

  void place(TileKind k, int row, int col) {
    grid_.place(k, row, col);
    policy_.on_place(k, row, col);
    mark_around(k, row, col);
  }

  void undo_to(int size) {
    while (grid_.size() > size) {
      const Placed p = grid_.tile(grid_.size() - 1);
      grid_.undo();
      policy_.on_undo(p.kind, p.row, p.col);
    }
  }

  void mark_all() {
    for (int r = 0; r <= grid_.height(); ++r)
      for (int c = 0; c <= grid_.width(); ++c) push_vertex(r, c);
    for (int r = 0; r < grid_.height(); ++r)
      for (int c = 0; c < grid_.width(); ++c) push_cell(r, c);
  }

  void clear_marks() {
    for (const auto& v : vstack_) vdirty_[vidx(v.row, v.col)] = 0;
    for (const auto& c : cstack_) cdirty_[cidx(c.row, c.col)] = 0;
    vstack_.clear();
    cstack_.clear();
  }

  // Applies deductions until none remain. Returns false on contradiction (marks are cleared).
  bool propagate(std::uint64_t* forced = nullptr) {
    for (;;) {
      while (!vstack_.empty() || !cstack_.empty()) {
        RuleHit hit;
        if (!vstack_.empty()) {
          Vertex v = vstack_.back();
          vstack_.pop_back();
          vdirty_[vidx(v.row, v.col)] = 0;
          hit = vertex_rule(grid_, policy_, v.row, v.col);
        } else {
          Cell c = cstack_.back();
          cstack_.pop_back();
          cdirty_[cidx(c.row, c.col)] = 0;
          hit = cell_rule(grid_, policy_, c.row, c.col);
        }
        if (hit.type == RuleHit::Type::Contra) {
          clear_marks();
          return false;
        }
        if (hit.type == RuleHit::Type::Force) {
          place(hit.kind, hit.row, hit.col);
          if (forced) ++*forced;
        }
      }
      if (!policy_.feasible(grid_.empty_count())) return false;
      if (!policy_.global() || grid_.empty_count() == 0) return true;
      // Targets elsewhere on the board may have removed candidates; sweep every empty cell.
      bool progressed = false;
      for (int r = 0; r < grid_.height() && !progressed; ++r)
        for (int c = 0; c < grid_.width() && !progressed; ++c) {
          RuleHit hit = cell_rule(grid_, policy_, r, c);
          if (hit.type == RuleHit::Type::Contra) return false;
          if (hit.type == RuleHit::Type::Force) {
            place(hit.kind, hit.row, hit.col);
            if (forced) ++*forced;
            progressed = true;
          }
        }
      if (!progressed) return true;
    }
  }

 private:
  std::size_t vidx(int r, int c) const {
    return static_cast<std::size_t>(r) * (grid_.width() + 1) + c;
  }
  std::size_t cidx(int r, int c) const { return static_cast<std::size_t>(r) * grid_.width() + c; }

  void push_vertex(int r, int c) {
    if (r < 1 || c < 1 || r >= grid_.height() || c >= grid_.width()) return;
    auto& d = vdirty_[vidx(r, c)];
    if (d) return;
    d = 1;
    vstack_.push_back({r, c});
  }
  void push_cell(int r, int c) {
    if (r < 0 || c < 0 || r >= grid_.height() || c >= grid_.width()) return;
    if (!grid_.is_empty(r, c)) return;
    auto& d = cdirty_[cidx(r, c)];
    if (d) return;
    d = 1;
    cstack_.push_back({r, c});
  }

  void mark_around(TileKind k, int row, int col) {
    const int r1 = row + (k == TileKind::VDomino ? 1 : 0);
    const int c1 = col + (k == TileKind::HDomino ? 1 : 0);
    for (int r = row; r <= r1 + 1; ++r)
      for (int c = col; c <= c1 + 1; ++c) push_vertex(r, c);
    for (int r = row - 2; r <= r1 + 2; ++r)
      for (int c = col - 2; c <= c1 + 2; ++c) push_cell(r, c);
  }

  Grid grid_;
  Policy policy_;
  std::vector<std::uint8_t> vdirty_;
  std::vector<std::uint8_t> cdirty_;
  std::vector<Vertex> vstack_;
  std::vector<Cell> cstack_;
};

// Depth-first search over the first empty cell in row-major order. `order` fills the branch order
// for a node; `on_solution` returns false to stop. Propagation runs after every placement.
template <class Policy, class Order, class OnSolution>
class Search {
 public:
  Search(Engine<Policy>& engine, Order order, OnSolution on_solution, bool use_propagation = true)
      : e_(engine), order_(std::move(order)), on_solution_(std::move(on_solution)),
        propagate_(use_propagation) {}

  // Call after the initial tiles are placed and propagated. Returns false if stopped early.
  bool run() { return dfs(0); }

  SearchStats& stats() noexcept { return stats_; }
  std::uint64_t* forced_counter() noexcept { return &stats_.forced; }

 private:
  bool dfs(int from) {
    Grid& g = e_.grid();
    const int idx = g.first_empty(from);
    if (idx < 0) {
      if (!e_.policy().accept()) return true;
      return on_solution_(g);
    }
    const int row = idx / g.width();
    const int col = idx % g.width();
    std::array<TileKind, 3> kinds{TileKind::VDomino, TileKind::HDomino, TileKind::Monomino};
    order_(kinds);
    for (TileKind k : kinds) {
      if (!e_.admissible(k, row, col)) continue;
      const int mark = g.size();
      e_.place(k, row, col);
      ++stats_.nodes;
      bool ok = propagate_ ? e_.propagate(&stats_.forced)
                           : (e_.clear_marks(), e_.policy().feasible(g.empty_count()));
      if (ok && !dfs(idx)) return false;
      e_.undo_to(mark);
      ++stats_.backtracks;
    }
    return true;
  }

  Engine<Policy>& e_;
  Order order_;
  OnSolution on_solution_;
  bool propagate_;
  SearchStats stats_;
};

}  // namespace detail
}  // namespace tatami
