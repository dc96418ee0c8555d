#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tatami/covering.hpp"
#include "tatami/detail/grid.hpp"
#include "tatami/error.hpp"

namespace tatami {

enum class Player { One, Two };

inline Player other(Player p) { return p == Player::One ? Player::Two : Player::One; }
inline int player_number(Player p) { return p == Player::One ? 1 : 2; }

struct Ruleset {
  std::array<bool, 3> allowed{true, true, true};  // indexed by TileKind
  // Game-tree census convention: whether the root position counts as a node.
  bool count_root = true;

  bool allows(TileKind k) const noexcept { return allowed[static_cast<int>(k)]; }
  bool operator==(const Ruleset&) const = default;

  std::string kinds_string() const {
    std::string s;
    for (TileKind k : kAllKinds)
      if (allows(k)) s += to_string(k);
    return s;
  }
};

// Monominoes and both dominoes, root counted. No kind subset or root convention gives a 2x6
// census of 431949 nodes, so this is the plain reading of the rules.
inline constexpr Ruleset kDefaultNokuRuleset{};

struct Move {
  TileKind kind = TileKind::Monomino;
  Cell anchor;

  bool operator==(const Move&) const = default;
};

struct GameState {
  Covering covering;
  Player to_move = Player::One;
};

struct GameVerdict {
  Player winner = Player::One;
  std::optional<Move> best_move;
  std::optional<std::uint64_t> tree_nodes;
};

struct NokuBudget {
  int max_area = 36;
  std::size_t max_positions = 40'000'000;
};

namespace detail {

using NokuKey = unsigned __int128;

// Grid plus a 3-bit-per-cell position key: 0 empty, 1 monomino, 2/3 horizontal halves,
// 4/5 vertical halves.
class NokuBoard {
 public:
  explicit NokuBoard(const Region& region) : grid_(region), width_(region.width()) {}

  Grid& grid() noexcept { return grid_; }
  const Grid& grid() const noexcept { return grid_; }
  NokuKey key() const noexcept { return key_; }

  void place(TileKind k, int r, int c) {
    grid_.place(k, r, c);
    key_ ^= tile_bits(k, r, c);
  }
  void undo() {
    const Placed p = grid_.tile(grid_.size() - 1);
    grid_.undo();
    key_ ^= tile_bits(p.kind, p.row, p.col);
  }

  // Canonical order: kind (M, H, V), then anchor in row-major order.
  template <class Fn>
  void for_each_move(const Ruleset& rules, Fn fn) const {
    for (TileKind k : kAllKinds) {
      if (!rules.allows(k)) continue;
      for (int r = 0; r < grid_.height(); ++r)
        for (int c = 0; c < grid_.width(); ++c)
          if (grid_.legal(k, r, c)) fn(k, r, c);
    }
  }

  bool has_move(const Ruleset& rules) const {
    for (TileKind k : kAllKinds) {
      if (!rules.allows(k)) continue;
      for (int r = 0; r < grid_.height(); ++r)
        for (int c = 0; c < grid_.width(); ++c)
          if (grid_.legal(k, r, c)) return true;
    }
    return false;
  }

 private:
  NokuKey bits(int r, int c, unsigned label) const {
    return static_cast<NokuKey>(label) << (3 * (r * width_ + c));
  }
  NokuKey tile_bits(TileKind k, int r, int c) const {
    switch (k) {
      case TileKind::Monomino: return bits(r, c, 1);
      case TileKind::HDomino: return bits(r, c, 2) | bits(r, c + 1, 3);
      case TileKind::VDomino: return bits(r, c, 4) | bits(r + 1, c, 5);
    }
    return 0;
  }

  Grid grid_;
  int width_;
  NokuKey key_ = 0;
};

struct KeyHash {
  std::size_t operator()(NokuKey k) const noexcept {
    std::uint64_t lo = static_cast<std::uint64_t>(k);
    std::uint64_t hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x7F4A7C159E3779B9ull + (lo << 6));
    h ^= h >> 29;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
  }
};

inline void check_budget(const Region& region, const NokuBudget& budget) {
  if (region.height() * region.width() > 42 || region.area() > budget.max_area)
    throw Error(ErrorCode::BudgetExceeded, "board exceeds the noku search budget");
}

inline NokuBoard board_from(const Covering& covering) {
  NokuBoard b(covering.region());
  for (const Tile& t : covering.tiles()) b.place(t.kind, t.anchor.row, t.anchor.col);
  return b;
}

class NokuSolver {
 public:
  NokuSolver(const Ruleset& rules, const NokuBudget& budget) : rules_(rules), budget_(budget) {}

  // True when the side to move wins.
  bool wins(NokuBoard& b) {
    auto it = memo_.find(b.key());
    if (it != memo_.end()) return it->second;
    bool win = false;
    Grid& g = b.grid();
    for (TileKind k : kAllKinds) {
      if (!rules_.allows(k)) continue;
      for (int r = 0; r < g.height() && !win; ++r)
        for (int c = 0; c < g.width() && !win; ++c) {
          if (!g.legal(k, r, c)) continue;
          b.place(k, r, c);
          win = !wins(b);
          b.undo();
        }
      if (win) break;
    }
    if (memo_.size() >= budget_.max_positions)
      throw Error(ErrorCode::BudgetExceeded, "noku position budget exhausted");
    memo_.emplace(b.key(), win);
    return win;
  }

  std::size_t positions() const noexcept { return memo_.size(); }

 private:
  Ruleset rules_;
  NokuBudget budget_;
  std::unordered_map<NokuKey, bool, KeyHash> memo_;
};

// Node count of the full game tree below a position, root included. The memo only caches subtree
// sizes; positions reached by different move orders are still counted once per path.
class TreeCounter {
 public:
  TreeCounter(const Ruleset& rules, bool memo) : rules_(rules), use_memo_(memo) {}

  std::uint64_t count(NokuBoard& b) {
    if (use_memo_) {
      auto it = memo_.find(b.key());
      if (it != memo_.end()) return it->second;
    }
    std::uint64_t n = 1;
    Grid& g = b.grid();
    for (TileKind k : kAllKinds) {
      if (!rules_.allows(k)) continue;
      for (int r = 0; r < g.height(); ++r)
        for (int c = 0; c < g.width(); ++c) {
          if (!g.legal(k, r, c)) continue;
          b.place(k, r, c);
          n += count(b);
          b.undo();
        }
    }
    if (use_memo_) memo_.emplace(b.key(), n);
    return n;
  }

 private:
  Ruleset rules_;
  bool use_memo_;
  std::unordered_map<NokuKey, std::uint64_t, KeyHash> memo_;
};

}  // namespace detail

inline Player player_to_move(const Covering& covering) {
  return covering.size() % 2 == 0 ? Player::One : Player::Two;
}

inline std::vector<Move> legal_moves(const GameState& state, const Ruleset& rules) {
  std::vector<Move> out;
  detail::Grid g = detail::grid_from(state.covering);
  for (TileKind k : kAllKinds) {
    if (!rules.allows(k)) continue;
    for (int r = 0; r < g.height(); ++r)
      for (int c = 0; c < g.width(); ++c)
        if (g.legal(k, r, c)) out.push_back({k, {r, c}});
  }
  return out;
}

// Normal-play value of a position; the best move is the first winning move in canonical order, or
// the first legal move when every move loses.
inline GameVerdict solve_noku(const GameState& state, const Ruleset& rules,
                              const NokuBudget& budget = {}) {
  detail::check_budget(state.covering.region(), budget);
  detail::NokuBoard board = detail::board_from(state.covering);
  detail::NokuSolver solver(rules, budget);
  GameVerdict v;
  std::optional<Move> first;
  bool win = false;
  for (const Move& m : legal_moves(state, rules)) {
    if (!first) first = m;
    board.place(m.kind, m.anchor.row, m.anchor.col);
    const bool opponent_wins = solver.wins(board);
    board.undo();
    if (!opponent_wins) {
      win = true;
      v.best_move = m;
      break;
    }
  }
  if (!win) v.best_move = first;
  v.winner = win ? state.to_move : other(state.to_move);
  return v;
}

inline GameVerdict solve_noku(const Region& region, const Ruleset& rules,
                              const NokuBudget& budget = {}) {
  return solve_noku(GameState{Covering(region), Player::One}, rules, budget);
}

struct TreeOptions {
  bool memo = true;
  int jobs = 1;
};

// Nodes of the unpruned game tree from the empty board, under the ruleset's root convention.
inline std::uint64_t game_tree_stats(const Region& region, const Ruleset& rules,
                                     const TreeOptions& options = {},
                                     const NokuBudget& budget = {}) {
  detail::check_budget(region, budget);
  std::uint64_t total = 0;
  if (options.jobs <= 1) {
    detail::NokuBoard board(region);
    detail::TreeCounter counter(rules, options.memo);
    total = counter.count(board);
  } else {
    // One task per root move; each keeps its own memo.
    std::vector<Move> roots = legal_moves(GameState{Covering(region), Player::One}, rules);
    std::vector<std::future<std::uint64_t>> parts;
    for (const Move& m : roots)
      parts.push_back(std::async(std::launch::async, [&region, &rules, &options, m] {
        detail::NokuBoard board(region);
        board.place(m.kind, m.anchor.row, m.anchor.col);
        detail::TreeCounter counter(rules, options.memo);
        return counter.count(board);
      }));
    total = 1;
    for (auto& f : parts) total += f.get();
  }
  return rules.count_root ? total : total - 1;
}

struct CalibrationRow {
  Ruleset ruleset;
  std::uint64_t nodes = 0;
};

struct Calibration {
  std::optional<Ruleset> match;
  std::vector<CalibrationRow> table;
};

// Census over every nonempty set of tile kinds and both root conventions.
inline Calibration calibrate_ruleset(const Region& region, std::uint64_t target,
                                     const TreeOptions& options = {}) {
  Calibration cal;
  std::vector<Ruleset> hits;
  for (int mask = 1; mask < 8; ++mask) {
    Ruleset base;
    for (int k = 0; k < 3; ++k) base.allowed[k] = (mask >> k) & 1;
    base.count_root = true;
    const std::uint64_t with_root = game_tree_stats(region, base, options);
    for (bool root : {true, false}) {
      Ruleset r = base;
      r.count_root = root;
      const std::uint64_t n = root ? with_root : with_root - 1;
      cal.table.push_back({r, n});
      if (n == target) hits.push_back(r);
    }
  }
  // Several hits happen on boards too small for some kinds to fit; prefer the largest kind set,
  // then the root-counted convention, and give up on a tie.
  auto kinds = [](const Ruleset& r) { return r.allowed[0] + r.allowed[1] + r.allowed[2]; };
  std::stable_sort(hits.begin(), hits.end(), [&](const Ruleset& a, const Ruleset& b) {
    if (kinds(a) != kinds(b)) return kinds(a) > kinds(b);
    return a.count_root && !b.count_root;
  });
  if (hits.size() == 1 ||
      (!hits.empty() && (kinds(hits[0]) != kinds(hits[1]) ||
                         hits[0].count_root != hits[1].count_root)))
    cal.match = hits.front();
  return cal;
}

}  // namespace tatami
