#pragma once

#include <cstdint>
#include <future>
#include <optional>
#include <vector>

#include "tatami/covering.hpp"
#include "tatami/error.hpp"
#include "tatami/solver.hpp"

namespace tatami {

struct EnumConstraints {
  std::optional<int> monomino_count;
  std::optional<int> vertical_domino_count;
  std::optional<int> horizontal_domino_count;
  bool allow_monominoes = true;
};

struct CountResult {
  enum class Method { Formula, Enumeration };

  std::uint64_t count = 0;
  Method method = Method::Formula;
};

inline const char* to_string(CountResult::Method m) {
  return m == CountResult::Method::Formula ? "formula" : "enumeration";
}

inline SearchConstraints to_search_constraints(const Region& region, const EnumConstraints& c) {
  const int area = region.area();
  auto bad = [](const char* why) { return Error(ErrorCode::InconsistentConstraints, why); };
  if ((c.monomino_count && *c.monomino_count < 0) ||
      (c.vertical_domino_count && *c.vertical_domino_count < 0) ||
      (c.horizontal_domino_count && *c.horizontal_domino_count < 0))
    throw bad("counts must be non-negative");
  if (!c.allow_monominoes && c.monomino_count && *c.monomino_count > 0)
    throw bad("monomino count given while monominoes are disallowed");
  const int m = c.allow_monominoes ? c.monomino_count.value_or(0) : 0;
  const int domino_cells =
      2 * (c.vertical_domino_count.value_or(0) + c.horizontal_domino_count.value_or(0));
  if (m + domino_cells > area) throw bad("counts exceed the region area");
  const bool m_fixed = c.monomino_count.has_value() || !c.allow_monominoes;
  if (m_fixed && (area - m) % 2 != 0) throw bad("area minus monominoes must be even");
  if (m_fixed && c.vertical_domino_count && c.horizontal_domino_count &&
      m + domino_cells != area)
    throw bad("counts do not add up to the region area");

  SearchConstraints s;
  if (!c.allow_monominoes) s.allowed[static_cast<int>(TileKind::Monomino)] = false;
  s.exact_monominoes = c.allow_monominoes ? c.monomino_count : std::optional<int>(0);
  s.exact_vdominoes = c.vertical_domino_count;
  s.exact_hdominoes = c.horizontal_domino_count;
  return s;
}

// Calls `fn(const Covering&)` for every complete tatami covering satisfying the constraints, in the
// solver's branch order; `fn` returns false to stop. Returns the number of coverings visited.
template <class Fn>
std::uint64_t for_each_covering(const Region& region, const EnumConstraints& constraints, Fn fn) {
  const SearchConstraints rules = to_search_constraints(region, constraints);
  const Covering empty(region);
  std::uint64_t n = 0;
  detail::run_search(empty, rules, {}, [&](const detail::Grid& g) {
    ++n;
    return static_cast<bool>(fn(detail::covering_from_grid(empty, g)));
  });
  return n;
}

inline std::vector<Covering> enumerate_coverings(const Region& region,
                                                 const EnumConstraints& constraints = {}) {
  std::vector<Covering> out;
  for_each_covering(region, constraints, [&](const Covering& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

// Closed form for the n x n square with m monominoes; zero when n and m differ in parity.
inline CountResult count_square_coverings(int n, int m) {
  if (n < 1 || m < 0) throw Error(ErrorCode::InconsistentConstraints, "need n >= 1 and m >= 0");
  if (n > 62) throw Error(ErrorCode::RegionTooLarge, "count overflows 64 bits");
  CountResult r{0, CountResult::Method::Formula};
  if ((n - m) % 2 != 0 || m > n) return r;
  const std::uint64_t mm = static_cast<std::uint64_t>(m);
  if (m < n)
    r.count = mm * (std::uint64_t{1} << m) + (mm + 1) * (std::uint64_t{1} << (m + 1));
  else
    r.count = static_cast<std::uint64_t>(n) * (std::uint64_t{1} << (n - 1));
  return r;
}

inline constexpr int kMaxEnumerationArea = 64;

// Exhaustive count; `jobs` > 1 splits the search at the first branching cell.
inline CountResult count_by_enumeration(const Region& region, std::optional<int> monominoes,
                                        int jobs = 1) {
  if (region.area() > kMaxEnumerationArea)
    throw Error(ErrorCode::RegionTooLarge, "region too large for exhaustive enumeration");
  CountResult r{0, CountResult::Method::Enumeration};
  if (monominoes && (*monominoes < 0 || *monominoes > region.area() ||
                     (region.area() - *monominoes) % 2 != 0))
    return r;
  EnumConstraints ec;
  ec.monomino_count = monominoes;
  const SearchConstraints rules = to_search_constraints(region, ec);
  auto count_from = [&](const Covering& start) {
    std::uint64_t n = 0;
    detail::run_search(start, rules, {}, [&](const detail::Grid&) {
      ++n;
      return true;
    });
    return n;
  };
  const Covering empty(region);
  if (jobs <= 1) {
    r.count = count_from(empty);
    return r;
  }
  // Every covering places exactly one of V, H, M at the first cell.
  const Cell first = region.cells().front();
  std::vector<std::future<std::uint64_t>> parts;
  for (TileKind k : {TileKind::VDomino, TileKind::HDomino, TileKind::Monomino}) {
    if (!can_place(empty, k, first).legal()) continue;
    parts.push_back(std::async(std::launch::async, [&, k] {
      return count_from(place(empty, k, first));
    }));
  }
  for (auto& f : parts) r.count += f.get();
  return r;
}

}  // namespace tatami
