#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tatami/covering.hpp"
#include "tatami/detail/engine.hpp"
#include "tatami/error.hpp"
#include "tatami/projections.hpp"

namespace tatami {

enum class Mode { Oku, Tomoku, LazyPaver, Consultant, Noku };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Oku: return "oku";
    case Mode::Tomoku: return "tomoku";
    case Mode::LazyPaver: return "lazy-paver";
    case Mode::Consultant: return "consultant";
    case Mode::Noku: return "noku";
  }
  return "?";
}

inline std::optional<Mode> mode_from_string(std::string_view s) {
  if (s == "oku") return Mode::Oku;
  if (s == "tomoku") return Mode::Tomoku;
  if (s == "lazy-paver") return Mode::LazyPaver;
  if (s == "consultant") return Mode::Consultant;
  if (s == "noku") return Mode::Noku;
  return std::nullopt;
}

struct PieceBudget {
  std::optional<int> max_monominoes;
  std::optional<int> max_dominoes;

  bool operator==(const PieceBudget&) const = default;
};

struct PuzzleSpec {
  Mode mode = Mode::Oku;
  Region region;
  std::vector<Tile> given_tiles;
  std::optional<Projections> projections;
  PieceBudget budget;
  std::string id;
  std::string title;
  std::string difficulty;
};

inline constexpr const char* kGivenTag = "given";

// Throws MalformedPuzzle unless the mode-specific fields are present and the given tiles legal.
inline Covering initial_covering(const PuzzleSpec& p) {
  auto malformed = [](const std::string& why) { return Error(ErrorCode::MalformedPuzzle, why); };
  if (p.region.area() == 0) throw malformed("puzzle has an empty region");
  switch (p.mode) {
    case Mode::Noku: throw malformed("noku is a two-player game, not a covering puzzle");
    case Mode::Tomoku:
      if (!p.projections) throw malformed("tomoku puzzle has no projections");
      if (!p.region.is_rectangle()) throw malformed("tomoku is played on rectangles only");
      if (static_cast<int>(p.projections->rows.size()) != p.region.height() ||
          static_cast<int>(p.projections->cols.size()) != p.region.width())
        throw malformed("projection sizes do not match the region");
      break;
    case Mode::Consultant:
      if (p.given_tiles.empty()) throw malformed("consultant puzzle has no given tiles");
      break;
    case Mode::LazyPaver:
      for (const Tile& t : p.given_tiles)
        if (t.kind == TileKind::Monomino) throw malformed("lazy paver admits no monominoes");
      break;
    case Mode::Oku: break;
  }
  std::vector<Tile> given = p.given_tiles;
  for (Tile& t : given)
    if (!t.color_tag) t.color_tag = kGivenTag;
  try {
    return Covering::from_tiles(p.region, given);
  } catch (const IllegalPlacementError& e) {
    throw malformed(std::string("given tiles are not a legal partial covering: ") + e.what());
  }
}

inline SearchConstraints constraints_for(const PuzzleSpec& p) {
  SearchConstraints c;
  if (p.mode == Mode::LazyPaver) c.allowed[static_cast<int>(TileKind::Monomino)] = false;
  if (p.mode == Mode::Tomoku) c.projections = p.projections;
  c.max_monominoes = p.budget.max_monominoes;
  c.max_dominoes = p.budget.max_dominoes;
  return c;
}

struct SolveOutcome {
  enum class Status { Solutions, Unsatisfiable, LimitReached };

  Status status = Status::Unsatisfiable;
  std::vector<Covering> solutions;
  SearchStats stats;
};

inline const char* to_string(SolveOutcome::Status s) {
  switch (s) {
    case SolveOutcome::Status::Solutions: return "solutions";
    case SolveOutcome::Status::Unsatisfiable: return "unsatisfiable";
    case SolveOutcome::Status::LimitReached: return "limit-reached";
  }
  return "?";
}

// Branch order hook: receives {V, H, M} and may permute it for the current node.
using BranchOrder = std::function<void(std::array<TileKind, 3>&)>;

struct SearchOptions {
  bool propagate = true;
  BranchOrder order;  // empty means the fixed V, H, M order
};

namespace detail {

inline Covering covering_from_grid(const Covering& initial, const Grid& g) {
  std::vector<Tile> tiles = initial.tiles();
  for (int i = static_cast<int>(initial.size()); i < g.size(); ++i) {
    const Placed& p = g.tile(i);
    tiles.push_back(Tile{0, p.kind, {p.row, p.col}, std::nullopt});
  }
  return Covering::from_tiles(initial.region(), tiles);
}

// Runs the search from `initial`; `visit(const Grid&)` returns false to stop. Returns the stats
// and whether the search space was exhausted.
template <class Visit>
std::pair<SearchStats, bool> run_search(const Covering& initial, const SearchConstraints& rules,
                                        const SearchOptions& options, Visit visit) {
  Engine<ConstraintPolicy> engine(initial.region(), ConstraintPolicy(initial.region(), rules));
  for (const Tile& t : initial.tiles()) {
    if (!engine.policy().admissible(t.kind, t.anchor.row, t.anchor.col))
      return {SearchStats{}, true};
    engine.place(t.kind, t.anchor.row, t.anchor.col);
  }
  SearchStats root;
  if (options.propagate) {
    engine.mark_all();
    if (!engine.propagate(&root.forced)) return {root, true};
  } else {
    engine.clear_marks();
    if (!engine.policy().feasible(engine.grid().empty_count())) return {root, true};
  }
  auto order = [&options](std::array<TileKind, 3>& kinds) {
    if (options.order) options.order(kinds);
  };
  Search search(engine, order, visit, options.propagate);
  search.stats().forced = root.forced;
  const bool exhausted = search.run();
  return {search.stats(), exhausted};
}

}  // namespace detail

// Completions of `initial` under `rules`, in branch order, up to `limit`.
inline SolveOutcome search_completions(const Covering& initial, const SearchConstraints& rules,
                                       std::size_t limit, const SearchOptions& options = {}) {
  SolveOutcome out;
  auto [stats, exhausted] =
      detail::run_search(initial, rules, options, [&](const detail::Grid& g) {
        out.solutions.push_back(detail::covering_from_grid(initial, g));
        return out.solutions.size() < limit;
      });
  out.stats = stats;
  if (!exhausted)
    out.status = SolveOutcome::Status::LimitReached;
  else
    out.status = out.solutions.empty() ? SolveOutcome::Status::Unsatisfiable
                                       : SolveOutcome::Status::Solutions;
  return out;
}

// Depth-first search from the first uncovered cell in row-major order, trying V, H, M, with
// propagation after every placement. Stops after `limit` solutions.
inline SolveOutcome solve(const PuzzleSpec& puzzle, std::size_t limit = 1,
                          const SearchOptions& options = {}) {
  if (limit == 0) throw Error(ErrorCode::MalformedPuzzle, "solution limit must be at least 1");
  Covering initial = initial_covering(puzzle);
  if (puzzle.mode == Mode::Tomoku && !puzzle.projections->consistent())
    return SolveOutcome{SolveOutcome::Status::Unsatisfiable, {}, {}};
  return search_completions(initial, constraints_for(puzzle), limit, options);
}

inline SolveOutcome solve_all(const PuzzleSpec& puzzle, const SearchOptions& options = {}) {
  return solve(puzzle, std::numeric_limits<std::size_t>::max(), options);
}

// A Tomoku instance whose triples are those of a complete covering of a rectangle.
inline PuzzleSpec tomoku_from_covering(const Covering& covering) {
  if (!covering.region().is_rectangle())
    throw Error(ErrorCode::NonRectangular, "tomoku needs a rectangular covering");
  if (!is_complete(covering))
    throw Error(ErrorCode::IncompleteCovering, "tomoku needs a complete covering");
  PuzzleSpec p;
  p.mode = Mode::Tomoku;
  p.region = covering.region();
  p.projections = projections(covering);
  return p;
}

}  // namespace tatami
