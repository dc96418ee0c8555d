#include <catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"
#include "tatami/enumeration.hpp"
#include "tatami/puzzle_io.hpp"

using namespace tatami;
using K = TileKind;

TEST_CASE("hand-checkable enumerations", "[enumerate]") {
  EnumConstraints none;
  none.monomino_count = 0;
  const auto sq = enumerate_coverings(Region::rectangle(2, 2), none);
  REQUIRE(sq.size() == 2);
  std::set<K> kinds;
  for (const Covering& c : sq) {
    CHECK(c.size() == 2);
    kinds.insert(c.tiles().front().kind);
  }
  CHECK(kinds == std::set<K>{K::HDomino, K::VDomino});

  EnumConstraints one;
  one.monomino_count = 1;
  CHECK(enumerate_coverings(Region::rectangle(1, 3), one).size() == 2);
  EnumConstraints three;
  three.monomino_count = 3;
  CHECK(enumerate_coverings(Region::rectangle(1, 3), three).size() == 1);
}

TEST_CASE("enumeration matches the brute-force oracle", "[enumerate]") {
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 5; ++c) {
      const Region region = Region::rectangle(r, c);
      const auto expect = oracle::all_coverings(region);
      std::set<oracle::Layout> got;
      for (const Covering& cov : enumerate_coverings(region)) got.insert(oracle::layout_of(cov));
      CHECK(got == std::set<oracle::Layout>(expect.begin(), expect.end()));
    }
}

TEST_CASE("domino-kind counts filter the enumeration", "[enumerate]") {
  const Region region = Region::rectangle(4, 4);
  const auto all = oracle::all_coverings(region);
  for (int v = 0; v <= 8; ++v) {
    EnumConstraints ec;
    ec.vertical_domino_count = v;
    std::size_t expect = 0;
    for (const auto& l : all)
      expect += std::count_if(l.begin(), l.end(),
                              [](const oracle::Piece& p) { return p.kind == K::VDomino; }) == v;
    CHECK(enumerate_coverings(region, ec).size() == expect);
  }
}

TEST_CASE("inconsistent constraints are reported", "[enumerate]") {
  EnumConstraints ec;
  ec.monomino_count = 1;
  CHECK_THROWS_AS(enumerate_coverings(Region::rectangle(2, 2), ec), Error);
  ec.monomino_count = -1;
  CHECK_THROWS_AS(enumerate_coverings(Region::rectangle(2, 2), ec), Error);
  EnumConstraints no_m;
  no_m.allow_monominoes = false;
  no_m.monomino_count = 2;
  CHECK_THROWS_AS(enumerate_coverings(Region::rectangle(2, 2), no_m), Error);
  EnumConstraints too_many;
  too_many.vertical_domino_count = 2;
  too_many.horizontal_domino_count = 2;
  CHECK_THROWS_AS(enumerate_coverings(Region::rectangle(2, 2), too_many), Error);
}

TEST_CASE("closed-form square counts", "[formula]") {
  CHECK(count_square_coverings(2, 0).count == 2);
  CHECK(count_square_coverings(8, 8).count == 1024);
  CHECK(count_square_coverings(3, 5).count == 0);
  CHECK(count_square_coverings(4, 1).count == 0);
  CHECK(count_square_coverings(4, 1).method == CountResult::Method::Formula);
  CHECK_THROWS_AS(count_square_coverings(0, 0), Error);
}

TEST_CASE("enumerated square counts match the closed form", "[formula]") {
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= n + 2; ++m) {
      const CountResult e = count_by_enumeration(Region::rectangle(n, n), m);
      CHECK(e.method == CountResult::Method::Enumeration);
      CHECK(e.count == count_square_coverings(n, m).count);
    }
}

TEST_CASE("small rectangle counts", "[formula]") {
  CHECK(count_by_enumeration(Region::rectangle(1, 2), 0).count == 1);
  // 2x3 without monominoes: three verticals, or a vertical at either end beside two stacked
  // horizontals. Stacked horizontals beside each other would meet four at a corner.
  CHECK(count_by_enumeration(Region::rectangle(2, 3), 0).count == 3);
  CHECK(count_by_enumeration(Region::rectangle(3, 3), 4).count ==
        oracle::all_completions(Region::rectangle(3, 3), {}, [](const oracle::Layout& l) {
          return oracle::monominoes(l) == 4;
        }).size());
}

TEST_CASE("parallel counting matches serial", "[formula]") {
  for (auto [r, c] : {std::pair{5, 5}, {4, 7}, {6, 6}}) {
    const Region region = Region::rectangle(r, c);
    CHECK(count_by_enumeration(region, std::nullopt, 1).count ==
          count_by_enumeration(region, std::nullopt, 3).count);
    CHECK(count_by_enumeration(region, r % 2 == c % 2 ? 0 : 1, 1).count ==
          count_by_enumeration(region, r % 2 == c % 2 ? 0 : 1, 4).count);
  }
}

TEST_CASE("oversized regions are refused", "[formula]") {
  CHECK_THROWS_AS(count_by_enumeration(Region::rectangle(9, 9), 0), Error);
}

TEST_CASE("gallery of 8x8 with eight monominoes and seven verticals", "[gallery]") {
  EnumConstraints ec;
  ec.monomino_count = 8;
  ec.vertical_domino_count = 7;
  const auto gallery = enumerate_coverings(Region::rectangle(8, 8), ec);
  CHECK(gallery.size() == 52);
  for (const Covering& c : gallery) {
    CHECK(c.count(K::Monomino) == 8);
    CHECK(c.count(K::VDomino) == 7);
  }
  const std::string svg = render_svg(gallery);
  std::size_t frames = 0;
  for (std::size_t at = svg.find("class=\"frame\""); at != std::string::npos;
       at = svg.find("class=\"frame\"", at + 1))
    ++frames;
  CHECK(frames == gallery.size());
}
