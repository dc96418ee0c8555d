// Builds the bundled puzzle corpus. The source figures are photographs and drawings, so each
// fixture is constructed to have the property the figure illustrates; this program is the record
// of how. Usage: make_fixtures OUT_DIR

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <variant>

#include "tatami/enumeration.hpp"
#include "tatami/puzzle_io.hpp"
#include "tatami/solver.hpp"
#include "tatami/structure.hpp"

namespace fs = std::filesystem;
using namespace tatami;

namespace {

fs::path out_dir;

void write(const std::string& name, const PuzzleDocument& doc) {
  std::ofstream(out_dir / (name + ".tatami")) << render_puzzle(doc);
  std::cout << name << "\n";
}

bool complete_by_propagation(const Covering& partial, const Covering& full) {
  auto r = propagate(partial);
  auto* p = std::get_if<Propagation>(&r);
  return p && is_complete(p->covering) && p->covering == full;
}

Covering random_completion(const Covering& start, std::mt19937_64& rng,
                           const SearchConstraints& rules = {}) {
  SearchOptions opt;
  opt.order = [&rng](std::array<TileKind, 3>& k) {
    for (std::size_t i = 2; i > 0; --i) std::swap(k[i], k[rng() % (i + 1)]);
  };
  SolveOutcome o = search_completions(start, rules, 1, opt);
  if (o.solutions.empty()) throw std::runtime_error("no completion");
  return o.solutions.front();
}

bool has_all_features(const FeatureReport& f) {
  return !f.loners.empty() && !f.vees.empty() && !f.bidimers.empty() && !f.vortices.empty();
}

// Drops tiles while propagation still recovers `full`.
Covering minimal_seed(const Covering& full) {
  std::vector<Tile> keep = full.tiles_by_position();
  for (std::size_t i = 0; i < keep.size();) {
    std::vector<Tile> trial = keep;
    trial.erase(trial.begin() + static_cast<long>(i));
    for (Tile& t : trial) t.id = 0;
    if (complete_by_propagation(Covering::from_tiles(full.region(), trial), full))
      keep = std::move(trial);
    else
      ++i;
  }
  for (Tile& t : keep) t.id = 0;
  return Covering::from_tiles(full.region(), keep);
}

Covering with_tiles(const Region& region, std::initializer_list<std::pair<TileKind, Cell>> ts) {
  Covering c(region);
  for (auto [k, a] : ts) c = place(c, k, a);
  return c;
}

PuzzleSpec consultant(const Covering& partial, std::string id, std::string title) {
  PuzzleSpec p;
  p.mode = Mode::Consultant;
  p.region = partial.region();
  p.given_tiles = partial.tiles_by_position();
  for (Tile& t : p.given_tiles) t.color_tag = kGivenTag;
  p.id = std::move(id);
  p.title = std::move(title);
  return p;
}

void forced_completion() {
  // No rectangle up to 11x14 carries all four features at once, so the board has two notched
  // corners. Take the first covering in enumeration order that has them all, then thin it to
  // the fewest tiles from which propagation alone rebuilds it.
  const Region region = region_from_ascii(
      "###########.\n"
      "###########.\n"
      "###########.\n"
      "############\n"
      "############\n"
      "############\n"
      ".###########\n"
      ".###########\n"
      ".###########\n");
  std::optional<Covering> found;
  for_each_covering(region, {}, [&](const Covering& c) {
    if (!has_all_features(classify_features(c))) return true;
    found = c;
    return false;
  });
  if (!found) throw std::runtime_error("forced completion: no covering with every feature");
  PuzzleSpec p = consultant(minimal_seed(*found), "forced-completion", "Forced completion exercise");
  p.difficulty = "no-backtrack";
  write("forced-completion", make_document(p, *found, true));
}

void crossing_rays() {
  // Two ray sources on a small board whose forced rays cross. Each source alone is completable.
  const Region region = Region::rectangle(6, 6);
  std::vector<std::pair<TileKind, Cell>> links;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) links.push_back({TileKind::VDomino, {r, c}});
  for (int a = 0; a < 25; ++a) {
    for (int b = a + 1; b < 25; ++b) {
      // Link: vertical at (r,c), horizontal to its right on the lower cell.
      const Cell va = links[a].second, vb = links[b].second;
      Covering c(region);
      try {
        c = place(c, TileKind::VDomino, va);
        c = place(c, TileKind::HDomino, {va.row + 1, va.col + 1});
        c = place(c, TileKind::VDomino, {vb.row, vb.col + 0});
        c = place(c, TileKind::HDomino, {vb.row, vb.col + 1});
      } catch (const Error&) {
        continue;
      }
      if (vb.col + 2 >= 6 || va.col + 2 >= 6) continue;
      auto r = propagate(c);
      if (!std::holds_alternative<Contradiction>(r)) continue;
      bool early = false;
      for (const Finding& f : forced_moves(c))
        if (std::holds_alternative<Contradiction>(f)) early = true;
      if (early) continue;
      // Each pair alone must be completable.
      Covering one = with_tiles(region, {{TileKind::VDomino, va},
                                         {TileKind::HDomino, {va.row + 1, va.col + 1}}});
      Covering two = with_tiles(region, {{TileKind::VDomino, vb},
                                         {TileKind::HDomino, {vb.row, vb.col + 1}}});
      if (search_completions(one, {}, 1).solutions.empty() ||
          search_completions(two, {}, 1).solutions.empty())
        continue;
      write("crossing-rays", make_document(consultant(c, "crossing-rays", "Crossing rays")));
      return;
    }
  }
  throw std::runtime_error("crossing-rays: nothing found");
}

void blocked_oku() {
  // Oku position with exactly two empty cells where a monomino is blocked. A blocked cell can't
  // occur under a subset of a legal covering, so tiles go down one at a time at random.
  const Region region = Region::rectangle(8, 8);
  std::mt19937_64 rng(6);
  for (int attempt = 0; attempt < 5000; ++attempt) {
    Covering partial(region);
    for (int i = 0; i < 200 && partial.tiles().size() < 18; ++i) {
      const TileKind k = static_cast<TileKind>(rng() % 3);
      const Cell a{static_cast<int>(rng() % 8), static_cast<int>(rng() % 8)};
      if (can_place(partial, k, a).legal()) partial = place(partial, k, a);
    }
    std::vector<Cell> blocked;
    for (const Cell& c : region.cells())
      if (!partial.covered(c) &&
          can_place(partial, TileKind::Monomino, c).kind == PlacementVerdict::Kind::TatamiBlocked)
        blocked.push_back(c);
    if (blocked.size() != 2) continue;
    PuzzleSpec p;
    p.mode = Mode::Oku;
    p.region = region;
    p.given_tiles = partial.tiles_by_position();
    p.id = "blocked-oku";
    p.title = "Oku position with two obstructed monominoes";
    PuzzleDocument d = make_document(p);
    std::string cells;
    for (const Cell& c : blocked)
      cells += (cells.empty() ? "" : " ") + std::to_string(c.row) + "," + std::to_string(c.col);
    d.extra_fields.push_back({"blocked-monominoes", cells});
    write("blocked-oku", d);
    return;
  }
  throw std::runtime_error("blocked-oku: nothing found");
}

void tomoku_fixtures() {
  {
    PuzzleDocument d = generate_tomoku(6, 8, 10, Difficulty::NoBacktrack);
    d.spec.id = "tomoku-6x8";
    d.spec.title = "Tomoku overlay instance";
    write("tomoku-6x8", d);
  }
  {
    PuzzleDocument d = generate_tomoku(3, 10, 14, Difficulty::NoBacktrack);
    d.spec.id = "tomoku-3x10";
    d.spec.title = "Tomoku 3x10";
    write("tomoku-3x10", d);
  }
  // The 5x12 instance should need backtracking under the fixed strategy and have one solution.
  for (std::uint64_t seed = 1; seed < 500; ++seed) {
    PuzzleDocument d = generate_tomoku(5, 12, seed, Difficulty::Any);
    SolveOutcome first = solve(d.spec, 1);
    if (first.stats.backtracks == 0) continue;
    if (solve(d.spec, 2).solutions.size() != 1) continue;
    d.spec.id = "tomoku-5x12";
    d.spec.title = "Tomoku 5x12";
    d.spec.difficulty = "hard";
    write("tomoku-5x12", d);
    break;
  }
}

void vortex_twins() {
  // A CW vortex at the centre of an n x n board whose projections are shared by a covering
  // with a CCW vortex there. Smallest odd n wins. The tiles around the centre can't stay put:
  // the rays of the two vortices leave in different directions.
  using K = TileKind;
  auto centred = [](const Covering& c, int m, Chirality ch) {
    for (const auto& v : classify_features(c).vortices) {
      const Tile* t = c.find(v.centre);
      if (t->anchor == Cell{m, m} && v.chirality == ch) return true;
    }
    return false;
  };
  for (int n = 5; n <= 9; n += 2) {
    const Region region = Region::rectangle(n, n);
    const int m = n / 2;
    const Covering cw = with_tiles(region, {{K::Monomino, {m, m}}, {K::HDomino, {m - 1, m}},
                                            {K::VDomino, {m, m + 1}}, {K::HDomino, {m + 1, m - 1}},
                                            {K::VDomino, {m - 1, m - 1}}});
    for (const Covering& full : search_completions(cw, {}, 100000).solutions) {
      if (!centred(full, m, Chirality::CW)) continue;
      const PuzzleSpec spec = tomoku_from_covering(full);
      bool twin = false;
      for (const Covering& other : solve(spec, 1000).solutions)
        twin |= centred(other, m, Chirality::CCW);
      if (!twin) continue;
      PuzzleDocument d = make_document(spec, full, true);
      d.spec.id = "vortex-twins";
      d.spec.title = "Clockwise and counterclockwise vortex";
      write("vortex-twins", d);
      return;
    }
  }
  throw std::runtime_error("vortex twins: nothing found");
}

void driveway() {
  const Region region = region_from_ascii(
      "......####\n"
      "......####\n"
      "##########\n"
      "##########\n"
      "####....##\n"
      "####....##\n"
      "####......\n"
      "####......\n");
  PuzzleSpec p;
  p.mode = Mode::LazyPaver;
  p.region = region;
  p.id = "driveway";
  p.title = "Driveway";
  SolveOutcome o = solve(p, 1);
  if (o.solutions.empty()) throw std::runtime_error("driveway: driveway has no domino covering");
  write("driveway", make_document(p, o.solutions.front()));
}

void abandoned_job() {
  // Consultant NO instance: a ray pair whose conflict only shows after several forced tiles.
  const Region region = Region::rectangle(7, 7);
  std::mt19937_64 rng(13);
  std::size_t best = 0;
  std::optional<Covering> pick;
  for (int attempt = 0; attempt < 20000; ++attempt) {
    Covering c(region);
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      const TileKind k = rng() % 4 == 0 ? TileKind::Monomino
                                        : (rng() % 2 ? TileKind::HDomino : TileKind::VDomino);
      const Cell a{static_cast<int>(rng() % 7), static_cast<int>(rng() % 7)};
      if (can_place(c, k, a).legal())
        c = place(c, k, a);
      else
        ok = false;
    }
    if (!ok) continue;
    bool early = false;
    for (const Finding& f : forced_moves(c))
      if (std::holds_alternative<Contradiction>(f)) early = true;
    if (early) continue;
    // Count forced tiles before the contradiction surfaces.
    Covering cur = c;
    std::size_t steps = 0;
    bool contradiction = false;
    for (;;) {
      auto fs = forced_moves(cur);
      if (fs.empty()) break;
      if (std::holds_alternative<Contradiction>(fs.front())) {
        contradiction = true;
        break;
      }
      bool contra = false;
      for (const Finding& f : fs) contra |= std::holds_alternative<Contradiction>(f);
      if (contra) {
        contradiction = true;
        break;
      }
      const Deduction d = std::get<Deduction>(fs.front());
      cur = place(cur, d.kind, d.anchor);
      ++steps;
    }
    if (!contradiction || steps <= best) continue;
    best = steps;
    pick = c;
  }
  if (!pick) throw std::runtime_error("abandoned job: nothing found");
  write("abandoned-job", make_document(consultant(*pick, "abandoned-job", "Abandoned paving job")));
}

void plain() {
  PuzzleSpec oku;
  oku.mode = Mode::Oku;
  oku.region = Region::rectangle(8, 8);
  oku.id = "oku-8x8";
  oku.title = "Oku 8x8";
  write("oku-8x8", make_document(oku));

  PuzzleDocument noku;
  noku.spec.mode = Mode::Noku;
  noku.spec.region = Region::rectangle(2, 6);
  noku.spec.id = "noku-2x6";
  noku.spec.title = "Noku 2x6";
  write("noku-2x6", noku);

  PuzzleDocument noku44 = noku;
  noku44.spec.region = Region::rectangle(4, 4);
  noku44.spec.id = "noku-4x4";
  noku44.spec.title = "Noku 4x4";
  write("noku-4x4", noku44);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures OUT_DIR\n";
    return 2;
  }
  out_dir = argv[1];
  fs::create_directories(out_dir);
  plain();
  forced_completion();
  crossing_rays();
  blocked_oku();
  tomoku_fixtures();
  vortex_twins();
  driveway();
  abandoned_job();
  return 0;
}
