#include <catch_amalgamated.hpp>

#include <filesystem>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tatami/enumeration.hpp"
#include "tatami/puzzle_io.hpp"
#include "tatami/structure.hpp"

using namespace tatami;
using K = TileKind;

namespace {

PuzzleDocument fixture(const std::string& name) {
  return load_puzzle(std::filesystem::path(TATAMI_PUZZLE_DIR) / (name + ".tatami"));
}

Covering random_partial(const Region& r, std::mt19937_64& rng, int attempts) {
  Covering c(r);
  for (int i = 0; i < attempts; ++i) {
    const K k = static_cast<K>(rng() % 3);
    const Cell a{static_cast<int>(rng() % static_cast<unsigned>(r.height())),
                 static_cast<int>(rng() % static_cast<unsigned>(r.width()))};
    if (can_place(c, k, a).legal()) c = place(c, k, a);
  }
  return c;
}

}  // namespace

TEST_CASE("nothing is forced on an empty board", "[deduction]") {
  CHECK(forced_moves(Covering(Region::rectangle(4, 4))).empty());
  CHECK(forced_moves(Covering(Region::rectangle(1, 1))).size() == 1);  // lone cell: monomino
}

TEST_CASE("a vertical domino beside a horizontal one starts a ray", "[deduction]") {
  Covering c(Region::rectangle(4, 4));
  c = place(c, K::VDomino, {0, 0});
  c = place(c, K::HDomino, {1, 1});
  const auto fs = forced_moves(c);
  REQUIRE_FALSE(fs.empty());
  const auto* d = std::get_if<Deduction>(&fs.front());
  REQUIRE(d);
  CHECK(d->kind == K::HDomino);
  CHECK(d->anchor == Cell{2, 0});
  CHECK(d->cause == Vertex{2, 1});
}

TEST_CASE("deductions hold in every completion", "[deduction][random]") {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 150) {
    const Region r = Region::rectangle(2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 4));
    const Covering c = random_partial(r, rng, 4);
    const auto all = oracle::all_completions(r, oracle::layout_of(c),
                                             [](const oracle::Layout&) { return true; });
    const auto fs = forced_moves(c);
    bool contradiction = false;
    for (const Finding& f : fs) contradiction |= std::holds_alternative<Contradiction>(f);
    if (contradiction) {
      CHECK(all.empty());
    } else {
      for (const Finding& f : fs) {
        const auto& d = std::get<Deduction>(f);
        for (const auto& l : all)
          CHECK(std::find(l.begin(), l.end(), oracle::Piece{d.kind, d.anchor}) != l.end());
      }
    }
    ++checked;
  }
}

TEST_CASE("propagation on the forced completion exercise", "[propagate]") {
  const PuzzleDocument a = fixture("forced-completion");
  const auto r = propagate(initial_covering(a.spec));
  const auto* p = std::get_if<Propagation>(&r);
  REQUIRE(p);
  CHECK(is_complete(p->covering));
  CHECK(oracle::layout_of(p->covering) == oracle::layout_of(*a.solution));
  CHECK(p->trace.size() + a.spec.given_tiles.size() == a.solution->size());

  // Hand-placing the trace, each step previously Legal, rebuilds the same covering.
  Covering c = initial_covering(a.spec);
  for (const Deduction& d : p->trace) {
    REQUIRE(can_place(c, d.kind, d.anchor).legal());
    c = place(c, d.kind, d.anchor);
  }
  CHECK(oracle::layout_of(c) == oracle::layout_of(*a.solution));
}

TEST_CASE("crossing rays cannot be completed", "[propagate]") {
  const PuzzleDocument c = fixture("crossing-rays");
  const Covering start = initial_covering(c.spec);
  CHECK(std::holds_alternative<Contradiction>(propagate(start)));
  CHECK(oracle::all_completions(start.region(), oracle::layout_of(start),
                                [](const oracle::Layout&) { return true; })
            .empty());

  // Filling every hole with monominoes ignoring the law leaves at least one four-tile vertex.
  std::vector<Tile> tiles = start.tiles();
  for (const Cell& cell : start.region().cells())
    if (!start.covered(cell)) tiles.push_back(Tile{0, K::Monomino, cell, {}});
  CHECK_FALSE(violations(start.region(), tiles).empty());
}

TEST_CASE("propagating a complete covering is a no-op", "[propagate]") {
  Covering c(Region::rectangle(2, 2));
  c = place(c, K::HDomino, {0, 0});
  c = place(c, K::HDomino, {1, 0});
  const auto r = propagate(c);
  const auto* p = std::get_if<Propagation>(&r);
  REQUIRE(p);
  CHECK(p->trace.empty());
  CHECK(oracle::layout_of(p->covering) == oracle::layout_of(c));
}

TEST_CASE("propagation is confluent", "[propagate][random]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Region r = Region::rectangle(2 + static_cast<int>(rng() % 5), 2 + static_cast<int>(rng() % 7));
    const Covering c = random_partial(r, rng, 1 + static_cast<int>(rng() % 6));
    const auto base = propagate(c);
    std::mt19937_64 local(static_cast<std::uint64_t>(trial));
    const auto other = propagate_shuffled(c, local);
    REQUIRE(base.index() == other.index());
    if (const auto* p = std::get_if<Propagation>(&base))
      REQUIRE(oracle::layout_of(p->covering) ==
              oracle::layout_of(std::get<Propagation>(other).covering));
  }
}

TEST_CASE("propagation keeps the solution set", "[propagate][random]") {
  std::mt19937_64 rng(57);
  int done = 0;
  while (done < 40) {
    const Region r = Region::rectangle(5, 7);
    const Covering c = random_partial(r, rng, 8);
    if (c.size() < 4) continue;
    ++done;
    const auto expect = oracle::all_completions(r, oracle::layout_of(c),
                                                [](const oracle::Layout&) { return true; });
    const auto pr = propagate(c);
    if (std::holds_alternative<Contradiction>(pr)) {
      CHECK(expect.empty());
      continue;
    }
    SearchOptions naive;
    naive.propagate = false;
    std::set<oracle::Layout> got;
    for (const Covering& s :
         search_completions(std::get<Propagation>(pr).covering, {}, 1'000'000, naive).solutions)
      got.insert(oracle::layout_of(s));
    CHECK(got == std::set<oracle::Layout>(expect.begin(), expect.end()));
  }
}

TEST_CASE("a running bond has no features", "[features]") {
  // Aligned bricks would meet four at a corner, so alternate rows shift by one cell.
  Covering bond(Region::rectangle(4, 6));
  for (int r = 0; r < 4; ++r) {
    int col = 0;
    if (r % 2) {
      bond = place(bond, K::Monomino, {r, 0});
      col = 1;
    }
    for (; col + 1 < 6; col += 2) bond = place(bond, K::HDomino, {r, col});
    if (col < 6) bond = place(bond, K::Monomino, {r, col});
  }
  const FeatureReport f = classify_features(bond);
  CHECK(f.sources.empty());
  CHECK(f.rays.empty());
  CHECK(f.bond_cells.size() == 24);
}

TEST_CASE("a two-row running bond is pure bond", "[features]") {
  Covering c(Region::rectangle(2, 6));
  c = place(c, K::Monomino, {0, 0});
  c = place(c, K::Monomino, {0, 5});
  for (int col = 1; col < 5; col += 2) c = place(c, K::HDomino, {0, col});
  for (int col = 0; col < 5; col += 2) c = place(c, K::HDomino, {1, col});
  const FeatureReport f = classify_features(c);
  CHECK(f.rays.empty());
  CHECK(f.vortices.empty());
  CHECK(f.bidimers.empty());
  CHECK(f.bond_cells.size() == 12);
}

TEST_CASE("the forced completion exercise shows every feature", "[features]") {
  const PuzzleDocument a = fixture("forced-completion");
  const FeatureReport f = classify_features(*a.solution);
  CHECK_FALSE(f.loners.empty());
  CHECK_FALSE(f.vees.empty());
  CHECK_FALSE(f.bidimers.empty());
  CHECK_FALSE(f.vortices.empty());
  REQUIRE(a.features);
  CHECK(*a.features == f);
}

TEST_CASE("a pinwheel yields one vortex of its chirality", "[features]") {
  const Region r = Region::rectangle(4, 4);
  for (Chirality ch : {Chirality::CW, Chirality::CCW}) {
    Covering c(r);
    c = place(c, K::Monomino, {1, 1});
    if (ch == Chirality::CW) {
      c = place(c, K::HDomino, {0, 1});
      c = place(c, K::VDomino, {1, 2});
      c = place(c, K::HDomino, {2, 0});
      c = place(c, K::VDomino, {0, 0});
    } else {
      c = place(c, K::HDomino, {0, 0});
      c = place(c, K::VDomino, {0, 2});
      c = place(c, K::HDomino, {2, 1});
      c = place(c, K::VDomino, {1, 0});
    }
    const auto done = search_completions(c, {}, 1);
    REQUIRE_FALSE(done.solutions.empty());
    const FeatureReport f = classify_features(done.solutions.front());
    REQUIRE(f.vortices.size() == 1);
    CHECK(f.vortices[0].chirality == ch);
    CHECK(f.vortices[0].centre == c.owner({1, 1}));
  }
}

TEST_CASE("every ray on small boards has a source", "[features]") {
  for (auto [h, w] : {std::pair{4, 5}, {5, 6}, {6, 6}}) {
    for_each_covering(Region::rectangle(h, w), {}, [&](const Covering& c) {
      const FeatureReport f = classify_features(c);
      for (const Ray& ray : f.rays) {
        REQUIRE(ray.source.has_value());
        REQUIRE(*ray.source < static_cast<int>(f.sources.size()));
      }
      return true;
    });
  }
}

TEST_CASE("classification needs a complete covering", "[features]") {
  CHECK_THROWS_AS(classify_features(Covering(Region::rectangle(2, 2))), Error);
}

TEST_CASE("boundary signatures", "[signature]") {
  const auto all = enumerate_coverings(Region::rectangle(4, 6));
  std::set<BoundarySignature> sigs;
  for (const Covering& c : all) sigs.insert(boundary_signature(c));
  CHECK(sigs.size() == all.size());
  CHECK(boundary_signature(all.front()) == boundary_signature(all.front()));

  // On one row every tile touches the boundary.
  for (const Covering& c : enumerate_coverings(Region::rectangle(1, 7)))
    CHECK(boundary_signature(c).tiles.size() == c.size());
}
