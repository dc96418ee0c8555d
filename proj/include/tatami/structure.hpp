#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "tatami/covering.hpp"
#include "tatami/deduction.hpp"
#include "tatami/detail/engine.hpp"
#include "tatami/detail/grid.hpp"

namespace tatami {

namespace detail {

inline ConstraintPolicy policy_for(const Covering& covering, const SearchConstraints& rules) {
  ConstraintPolicy p(covering.region(), rules);
  for (const Tile& t : covering.tiles()) p.on_place(t.kind, t.anchor.row, t.anchor.col);
  return p;
}

inline Finding to_finding(const RuleHit& hit) {
  if (hit.type == RuleHit::Type::Force) return Deduction{hit.kind, {hit.row, hit.col}, hit.cause};
  return Contradiction{hit.cause, hit.reason, hit.cell};
}

// Every rule firing on the board: vertex rule over interior vertices, then cell rule over empty
// cells, both in row-major order. Repeated deductions of the same tile are reported once.
inline std::vector<Finding> scan(const Region& region, const Grid& g, const ConstraintPolicy& p) {
  std::vector<Finding> out;
  std::set<std::tuple<int, int, int>> seen;
  auto take = [&](const RuleHit& hit) {
    if (hit.type == RuleHit::Type::None) return;
    if (hit.type == RuleHit::Type::Force &&
        !seen.insert({hit.row, hit.col, static_cast<int>(hit.kind)}).second)
      return;
    out.push_back(to_finding(hit));
  };
  for (const Vertex& v : region.interior_vertices()) take(vertex_rule(g, p, v.row, v.col));
  for (const Cell& c : region.cells()) take(cell_rule(g, p, c.row, c.col));
  return out;
}

}  // namespace detail

// Tiles forced by the tatami law on a partial covering, plus any proof that no completion exists.
inline std::vector<Finding> forced_moves(const Covering& covering,
                                         const SearchConstraints& rules = {}) {
  detail::Grid g = detail::grid_from(covering);
  return detail::scan(covering.region(), g, detail::policy_for(covering, rules));
}

struct Propagation {
  Covering covering;
  std::vector<Deduction> trace;
};

using PropagateResult = std::variant<Propagation, Contradiction>;

namespace detail {

// Applies deductions until none remain. `pick` chooses which deductions of a round to apply and in
// which order; the fixpoint does not depend on that choice.
template <class Pick>
PropagateResult propagate_with(const Covering& covering, const SearchConstraints& rules,
                               Pick pick) {
  Grid g = grid_from(covering);
  ConstraintPolicy p = policy_for(covering, rules);
  std::vector<Deduction> trace;
  for (;;) {
    std::vector<Finding> findings = scan(covering.region(), g, p);
    std::vector<Deduction> round;
    for (const Finding& f : findings) {
      if (const auto* c = std::get_if<Contradiction>(&f)) return *c;
      round.push_back(std::get<Deduction>(f));
    }
    if (round.empty()) break;
    for (const Deduction& d : pick(round)) {
      if (!g.legal(d.kind, d.anchor.row, d.anchor.col) ||
          !p.admissible(d.kind, d.anchor.row, d.anchor.col)) {
        // Same tile already placed by an earlier deduction of this round.
        const int owner = g.owner(d.anchor.row, d.anchor.col);
        if (owner >= 0) {
          const Placed& t = g.tile(owner);
          if (t.kind == d.kind && t.row == d.anchor.row && t.col == d.anchor.col) continue;
        }
        return Contradiction{d.cause, Contradiction::Reason::FourMeet, std::nullopt};
      }
      g.place(d.kind, d.anchor.row, d.anchor.col);
      p.on_place(d.kind, d.anchor.row, d.anchor.col);
      trace.push_back(d);
    }
    if (!p.feasible(g.empty_count()))
      return Contradiction{Vertex{0, 0}, Contradiction::Reason::UncoverableCell, std::nullopt};
  }
  Covering out = covering;
  for (const Deduction& d : trace) out = place(out, d.kind, d.anchor);
  return Propagation{std::move(out), std::move(trace)};
}

}  // namespace detail

// Places forced tiles round by round until a fixpoint or a contradiction. Deductions within a
// round are applied in row-major order of their causes.
inline PropagateResult propagate(const Covering& covering, const SearchConstraints& rules = {}) {
  return detail::propagate_with(covering, rules,
                                [](std::vector<Deduction>& round) -> std::vector<Deduction>& {
                                  return round;
                                });
}

// Same fixpoint, but applies a single randomly chosen deduction per round.
template <class Urbg>
PropagateResult propagate_shuffled(const Covering& covering, Urbg& rng,
                                   const SearchConstraints& rules = {}) {
  return detail::propagate_with(covering, rules, [&rng](std::vector<Deduction>& round) {
    std::size_t i = static_cast<std::size_t>(rng() % round.size());
    return std::vector<Deduction>{round[i]};
  });
}

// ---------------------------------------------------------------------------------------------
// Feature classification.
//
// A ray is a diagonal staircase of alternating vertical and horizontal dominoes. Two dominoes of
// different orientation that share an edge always have exactly one common corner; we call that
// pair a link. Each domino has two short ends, and a ray enters and leaves a domino through links
// whose common corners lie on the same end. Rays are therefore the connected components of the
// graph whose nodes are (domino, end) pairs and whose edges are links.
//
// Features are the places rays start:
//   vortex  - a monomino whose four edge neighbours are dominoes in a pinwheel. Chirality is CW
//             when the domino above the monomino extends to the right.
//   bidimer - two parallel dominoes forming a 2x2 square.
//   vee     - two edge-adjacent monominoes.
//   loner   - any other monomino with a corner where a vertical and a horizontal domino are linked.
// ---------------------------------------------------------------------------------------------

enum class Chirality { CW, CCW };

inline const char* to_string(Chirality c) { return c == Chirality::CW ? "CW" : "CCW"; }

struct Vortex {
  std::array<TileId, 4> tiles{};  // above, right, below, left of the centre
  TileId centre = 0;
  Chirality chirality = Chirality::CW;

  bool operator==(const Vortex&) const = default;
};

struct Ray {
  std::vector<TileId> tiles;   // in order from one end to the other
  std::optional<int> source;   // index into FeatureReport::sources

  bool operator==(const Ray&) const = default;
};

struct FeatureReport {
  struct Source {
    enum class Type { Loner, Vee, Bidimer, Vortex };
    Type type;
    std::vector<TileId> tiles;

    bool operator==(const Source&) const = default;
  };

  std::vector<TileId> loners;
  std::vector<std::pair<TileId, TileId>> vees;
  std::vector<std::pair<TileId, TileId>> bidimers;
  std::vector<Vortex> vortices;
  std::vector<Ray> rays;
  std::vector<Cell> bond_cells;
  std::vector<Source> sources;  // every feature, in the order loners, vees, bidimers, vortices

  bool operator==(const FeatureReport&) const = default;
};

inline const char* to_string(FeatureReport::Source::Type t) {
  switch (t) {
    case FeatureReport::Source::Type::Loner: return "loner";
    case FeatureReport::Source::Type::Vee: return "vee";
    case FeatureReport::Source::Type::Bidimer: return "bidimer";
    case FeatureReport::Source::Type::Vortex: return "vortex";
  }
  return "?";
}

namespace detail {

// Index of the short end of a domino on which a corner vertex lies: 0 top/left, 1 bottom/right.
inline int domino_end(const Tile& t, Vertex corner) {
  if (t.kind == TileKind::VDomino) return corner.row == t.anchor.row ? 0 : 1;
  return corner.col == t.anchor.col ? 0 : 1;
}

inline bool is_corner_of(const Tile& t, Vertex v) {
  const int h = t.kind == TileKind::VDomino ? 2 : 1;
  const int w = t.kind == TileKind::HDomino ? 2 : 1;
  return (v.row == t.anchor.row || v.row == t.anchor.row + h) &&
         (v.col == t.anchor.col || v.col == t.anchor.col + w);
}

struct Link {
  TileId vertical;
  TileId horizontal;
  Vertex corner;
};

inline std::vector<Link> find_links(const Covering& covering) {
  std::vector<Link> links;
  std::set<std::pair<TileId, TileId>> seen;
  for (const Tile& v : covering.tiles()) {
    if (v.kind != TileKind::VDomino) continue;
    std::vector<Cell> around;
    for (int dr = 0; dr < 2; ++dr) {
      around.push_back({v.anchor.row + dr, v.anchor.col - 1});
      around.push_back({v.anchor.row + dr, v.anchor.col + 1});
    }
    around.push_back({v.anchor.row - 1, v.anchor.col});
    around.push_back({v.anchor.row + 2, v.anchor.col});
    for (const Cell& c : around) {
      const Tile* h = covering.tile_at(c);
      if (!h || h->kind != TileKind::HDomino || !seen.insert({v.id, h->id}).second) continue;
      for (int r = v.anchor.row; r <= v.anchor.row + 2; r += 2)
        for (int col = v.anchor.col; col <= v.anchor.col + 1; ++col)
          if (is_corner_of(*h, {r, col})) links.push_back({v.id, h->id, {r, col}});
    }
  }
  return links;
}

}  // namespace detail

inline FeatureReport classify_features(const Covering& covering) {
  if (!is_complete(covering))
    throw Error(ErrorCode::IncompleteCovering, "feature classification needs a complete covering");
  const Region& region = covering.region();
  FeatureReport report;
  std::set<TileId> in_feature;

  auto tile_at = [&](int r, int c) { return covering.tile_at({r, c}); };
  auto monomino_at = [&](int r, int c) {
    const Tile* t = tile_at(r, c);
    return t && t->kind == TileKind::Monomino;
  };

  // Vortices.
  std::set<TileId> vortex_centres;
  for (const Tile& m : covering.tiles()) {
    if (m.kind != TileKind::Monomino) continue;
    const int r = m.anchor.row, c = m.anchor.col;
    const Tile* n = tile_at(r - 1, c);
    const Tile* e = tile_at(r, c + 1);
    const Tile* s = tile_at(r + 1, c);
    const Tile* w = tile_at(r, c - 1);
    if (!n || !e || !s || !w) continue;
    auto is = [](const Tile* t, TileKind k, int ar, int ac) {
      return t->kind == k && t->anchor.row == ar && t->anchor.col == ac;
    };
    const bool cw = is(n, TileKind::HDomino, r - 1, c) && is(e, TileKind::VDomino, r, c + 1) &&
                    is(s, TileKind::HDomino, r + 1, c - 1) && is(w, TileKind::VDomino, r - 1, c - 1);
    const bool ccw = is(n, TileKind::HDomino, r - 1, c - 1) &&
                     is(e, TileKind::VDomino, r - 1, c + 1) && is(s, TileKind::HDomino, r + 1, c) &&
                     is(w, TileKind::VDomino, r, c - 1);
    if (!cw && !ccw) continue;
    report.vortices.push_back(
        {{n->id, e->id, s->id, w->id}, m.id, cw ? Chirality::CW : Chirality::CCW});
    vortex_centres.insert(m.id);
  }

  // Bidimers.
  for (const Tile& t : covering.tiles()) {
    if (t.kind == TileKind::HDomino) {
      const Tile* o = tile_at(t.anchor.row + 1, t.anchor.col);
      if (o && o->kind == TileKind::HDomino && o->anchor == Cell{t.anchor.row + 1, t.anchor.col})
        report.bidimers.push_back({t.id, o->id});
    } else if (t.kind == TileKind::VDomino) {
      const Tile* o = tile_at(t.anchor.row, t.anchor.col + 1);
      if (o && o->kind == TileKind::VDomino && o->anchor == Cell{t.anchor.row, t.anchor.col + 1})
        report.bidimers.push_back({t.id, o->id});
    }
  }

  // Vees.
  std::set<TileId> in_vee;
  for (const Tile& t : covering.tiles()) {
    if (t.kind != TileKind::Monomino || vortex_centres.count(t.id)) continue;
    for (auto [dr, dc] : {std::pair{0, 1}, std::pair{1, 0}}) {
      if (!monomino_at(t.anchor.row + dr, t.anchor.col + dc)) continue;
      const Tile* o = tile_at(t.anchor.row + dr, t.anchor.col + dc);
      report.vees.push_back({t.id, o->id});
      in_vee.insert(t.id);
      in_vee.insert(o->id);
    }
  }

  // Loners.
  auto links = detail::find_links(covering);
  std::set<std::tuple<TileId, TileId, Vertex>> link_set;
  for (const auto& l : links) link_set.insert({l.vertical, l.horizontal, l.corner});
  for (const Tile& t : covering.tiles()) {
    if (t.kind != TileKind::Monomino || vortex_centres.count(t.id) || in_vee.count(t.id)) continue;
    bool loner = false;
    for (const Vertex& v : corners(t.anchor)) {
      if (!region.is_interior(v)) continue;
      std::set<TileId> others;
      for (const Cell& c : v.incident_cells())
        if (c != t.anchor) others.insert(covering.owner(c));
      if (others.size() != 2) continue;
      const Tile* a = covering.find(*others.begin());
      const Tile* b = covering.find(*others.rbegin());
      if (a->kind == TileKind::HDomino) std::swap(a, b);
      if (a->kind == TileKind::VDomino && b->kind == TileKind::HDomino) {
        for (const auto& l : links)
          if (l.vertical == a->id && l.horizontal == b->id) loner = true;
      }
    }
    if (loner) report.loners.push_back(t.id);
  }

  using SourceType = FeatureReport::Source::Type;
  for (TileId id : report.loners) report.sources.push_back({SourceType::Loner, {id}});
  for (auto [a, b] : report.vees) report.sources.push_back({SourceType::Vee, {a, b}});
  for (auto [a, b] : report.bidimers) report.sources.push_back({SourceType::Bidimer, {a, b}});
  for (const Vortex& v : report.vortices) {
    std::vector<TileId> ids(v.tiles.begin(), v.tiles.end());
    ids.push_back(v.centre);
    report.sources.push_back({SourceType::Vortex, ids});
  }
  for (const auto& s : report.sources) in_feature.insert(s.tiles.begin(), s.tiles.end());

  // Rays: components of the (domino, end) graph.
  using End = std::pair<TileId, int>;
  std::map<End, std::vector<std::size_t>> at_end;
  std::vector<std::pair<End, End>> edges;
  for (const auto& l : links) {
    const Tile* v = covering.find(l.vertical);
    const Tile* h = covering.find(l.horizontal);
    End ev{v->id, detail::domino_end(*v, l.corner)};
    End eh{h->id, detail::domino_end(*h, l.corner)};
    at_end[ev].push_back(edges.size());
    at_end[eh].push_back(edges.size());
    edges.push_back({ev, eh});
  }
  std::set<End> visited;
  for (const auto& [start, _] : at_end) {
    if (visited.count(start) || at_end[start].size() != 1) continue;
    // Walk a path from a degree-one end.
    Ray ray;
    End cur = start;
    std::optional<std::size_t> via;
    for (;;) {
      visited.insert(cur);
      ray.tiles.push_back(cur.first);
      std::optional<std::size_t> next;
      for (std::size_t e : at_end[cur])
        if (!via || e != *via) next = e;
      if (!next) break;
      const End other = edges[*next].first == cur ? edges[*next].second : edges[*next].first;
      if (visited.count(other)) break;
      via = next;
      cur = other;
    }
    report.rays.push_back(std::move(ray));
  }
  // Closed loops of links (vortex arms) have no degree-one end.
  for (const auto& [start, _] : at_end) {
    if (visited.count(start)) continue;
    Ray ray;
    End cur = start;
    std::optional<std::size_t> via;
    while (!visited.count(cur)) {
      visited.insert(cur);
      ray.tiles.push_back(cur.first);
      std::optional<std::size_t> next;
      for (std::size_t e : at_end[cur])
        if (!via || e != *via) next = e;
      if (!next) break;
      via = next;
      cur = edges[*next].first == cur ? edges[*next].second : edges[*next].first;
    }
    report.rays.push_back(std::move(ray));
  }

  // Ray ownership: the first source containing, or edge-adjacent to, an end tile of the ray.
  auto touches = [&](TileId ray_tile, const FeatureReport::Source& s) {
    if (std::find(s.tiles.begin(), s.tiles.end(), ray_tile) != s.tiles.end()) return true;
    const Tile* t = covering.find(ray_tile);
    for (const Cell& c : t->cell_list())
      for (auto [dr, dc] : {std::pair{-1, 0}, std::pair{1, 0}, std::pair{0, -1}, std::pair{0, 1}}) {
        TileId o = covering.owner({c.row + dr, c.col + dc});
        if (o != 0 && std::find(s.tiles.begin(), s.tiles.end(), o) != s.tiles.end()) return true;
      }
    return false;
  };
  for (Ray& ray : report.rays) {
    for (std::size_t i = 0; i < report.sources.size() && !ray.source; ++i)
      if (touches(ray.tiles.front(), report.sources[i]) ||
          touches(ray.tiles.back(), report.sources[i]))
        ray.source = static_cast<int>(i);
  }

  std::set<TileId> accounted = in_feature;
  for (const Ray& ray : report.rays) accounted.insert(ray.tiles.begin(), ray.tiles.end());
  for (const Cell& c : region.cells())
    if (!accounted.count(covering.owner(c))) report.bond_cells.push_back(c);
  return report;
}

// ---------------------------------------------------------------------------------------------

// Tiles spanning at least one boundary cell, ordered by (anchor, kind).
struct BoundarySignature {
  std::vector<std::pair<Cell, TileKind>> tiles;

  auto operator<=>(const BoundarySignature&) const = default;

  std::string to_string() const {
    std::string out;
    for (const auto& [cell, kind] : tiles) {
      if (!out.empty()) out += ' ';
      out += tatami::to_string(kind);
      out += std::to_string(cell.row) + "," + std::to_string(cell.col);
    }
    return out;
  }
};

inline BoundarySignature boundary_signature(const Covering& covering) {
  const Region& region = covering.region();
  BoundarySignature sig;
  for (const Tile& t : covering.tiles_by_position()) {
    for (const Cell& c : t.cell_list())
      if (region.is_boundary_cell(c)) {
        sig.tiles.push_back({t.anchor, t.kind});
        break;
      }
  }
  return sig;
}

}  // namespace tatami
