#pragma once

#include <optional>
#include <variant>

#include "tatami/covering.hpp"
#include "tatami/geometry.hpp"

namespace tatami {

// A tile present in every completion of the covering it was deduced from.
struct Deduction {
  TileKind kind = TileKind::Monomino;
  Cell anchor;
  Vertex cause;

  bool operator==(const Deduction&) const = default;
};

// Evidence that a partial covering has no completion.
struct Contradiction {
  enum class Reason { FourMeet, UncoverableCell };

  Vertex vertex;
  Reason reason = Reason::FourMeet;
  std::optional<Cell> cell;  // set for UncoverableCell

  bool operator==(const Contradiction&) const = default;
};

inline const char* to_string(Contradiction::Reason r) {
  return r == Contradiction::Reason::FourMeet ? "FourMeet" : "UncoverableCell";
}

using Finding = std::variant<Deduction, Contradiction>;

}  // namespace tatami
