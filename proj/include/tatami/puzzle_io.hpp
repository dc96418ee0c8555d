#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tatami/covering.hpp"
#include "tatami/error.hpp"
#include "tatami/noku.hpp"
#include "tatami/projections.hpp"
#include "tatami/solver.hpp"
#include "tatami/structure.hpp"

namespace tatami {

// Document grammar (one item per line, blank lines ignored outside blocks):
//
//   tatami-puzzle 1
//   key: value                 id title mode difficulty max-monominoes max-dominoes kinds
//   name:                      opens a block closed by a line "end"
//
// Blocks: region (ASCII, '#' in region), rows / cols (one "v h m" triple per line), given and
// solution (one "K row col [tag]" tile per line), features (see render_features). Unknown keys and
// blocks are kept verbatim and written back after the known ones.

inline constexpr int kFormatVersion = 1;

struct PuzzleDocument {
  PuzzleSpec spec;
  Ruleset ruleset;                  // noku only
  std::optional<Covering> solution;  // tile ids are the 1-based line numbers of the block
  std::optional<FeatureReport> features;
  std::vector<std::pair<std::string, std::string>> extra_fields;
  std::vector<std::pair<std::string, std::vector<std::string>>> extra_blocks;
};

// Same tiles with ids 1..n in (anchor, kind) order, the numbering documents use.
inline Covering renumbered(const Covering& c) {
  std::vector<Tile> tiles = c.tiles_by_position();
  for (std::size_t i = 0; i < tiles.size(); ++i) tiles[i].id = static_cast<TileId>(i + 1);
  return Covering::from_tiles(c.region(), tiles);
}

inline PuzzleDocument make_document(PuzzleSpec spec, std::optional<Covering> solution = {},
                                    bool with_features = false) {
  PuzzleDocument d;
  for (std::size_t i = 0; i < spec.given_tiles.size(); ++i)
    spec.given_tiles[i].id = static_cast<TileId>(i + 1);
  d.spec = std::move(spec);
  if (solution) {
    d.solution = renumbered(*solution);
    if (with_features) d.features = classify_features(*d.solution);
  }
  return d;
}

inline bool operator==(const PuzzleDocument& a, const PuzzleDocument& b) {
  auto tiles_eq = [](const std::vector<Tile>& x, const std::vector<Tile>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].id != y[i].id || x[i].shape_key() != y[i].shape_key()) return false;
    return true;
  };
  auto sol_eq = [&](const std::optional<Covering>& x, const std::optional<Covering>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->region() == y->region() && tiles_eq(x->tiles(), y->tiles()));
  };
  const PuzzleSpec& p = a.spec;
  const PuzzleSpec& q = b.spec;
  return p.mode == q.mode && p.region == q.region && tiles_eq(p.given_tiles, q.given_tiles) &&
         p.projections == q.projections && p.budget == q.budget && p.id == q.id &&
         p.title == q.title && p.difficulty == q.difficulty &&
         (p.mode != Mode::Noku || a.ruleset == b.ruleset) && sol_eq(a.solution, b.solution) &&
         a.features == b.features && a.extra_fields == b.extra_fields &&
         a.extra_blocks == b.extra_blocks;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string rtrim(std::string_view s) {
  const auto e = s.find_last_not_of(" \t\r");
  return e == std::string_view::npos ? std::string() : std::string(s.substr(0, e + 1));
}

inline std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline int to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw SyntaxError(line, "expected an integer, got '" + s + "'");
}

inline bool valid_key(std::string_view k) {
  if (k.empty() || k[0] < 'a' || k[0] > 'z') return false;
  return std::all_of(k.begin(), k.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

inline std::string tile_line(const Tile& t) {
  std::string s = std::string(to_string(t.kind)) + " " + std::to_string(t.anchor.row) + " " +
                  std::to_string(t.anchor.col);
  if (t.color_tag) s += " " + *t.color_tag;
  return s;
}

inline Tile parse_tile(const std::string& text, int line, TileId id) {
  const auto w = words(text);
  if (w.size() < 3 || w.size() > 4) throw SyntaxError(line, "tile lines read 'K row col [tag]'");
  auto kind = kind_from_string(w[0]);
  if (!kind) throw SyntaxError(line, "unknown tile kind '" + w[0] + "'");
  Tile t{id, *kind, {to_int(w[1], line), to_int(w[2], line)}, std::nullopt};
  if (t.anchor.row < 0 || t.anchor.col < 0) throw SyntaxError(line, "negative tile anchor");
  if (w.size() == 4) t.color_tag = w[3];
  return t;
}

inline std::string ids_line(const std::vector<TileId>& ids) {
  std::string s;
  for (TileId id : ids) s += " " + std::to_string(id);
  return s;
}

}  // namespace detail

// Feature lines; tiles are referred to by solution id.
//   loner ID | vee ID ID | bidimer ID ID | vortex CW|CCW CENTRE N E S W | ray SOURCE|- ID... |
//   bond row,col ...
inline std::vector<std::string> render_features(const FeatureReport& f) {
  std::vector<std::string> out;
  for (TileId id : f.loners) out.push_back("loner " + std::to_string(id));
  for (auto [a, b] : f.vees) out.push_back("vee " + std::to_string(a) + " " + std::to_string(b));
  for (auto [a, b] : f.bidimers)
    out.push_back("bidimer " + std::to_string(a) + " " + std::to_string(b));
  for (const Vortex& v : f.vortices)
    out.push_back(std::string("vortex ") + to_string(v.chirality) + " " +
                  std::to_string(v.centre) +
                  detail::ids_line({v.tiles.begin(), v.tiles.end()}));
  for (const Ray& r : f.rays)
    out.push_back("ray " + (r.source ? std::to_string(*r.source) : std::string("-")) +
                  detail::ids_line(r.tiles));
  if (!f.bond_cells.empty()) {
    std::string s = "bond";
    for (const Cell& c : f.bond_cells)
      s += " " + std::to_string(c.row) + "," + std::to_string(c.col);
    out.push_back(s);
  }
  return out;
}

inline FeatureReport parse_features(const std::vector<std::pair<int, std::string>>& lines) {
  using SourceType = FeatureReport::Source::Type;
  FeatureReport f;
  for (const auto& [line, text] : lines) {
    const auto w = detail::words(text);
    if (w.empty()) continue;
    auto id = [&](std::size_t i) {
      const int v = detail::to_int(w[i], line);
      if (v <= 0) throw SyntaxError(line, "tile ids are positive");
      return static_cast<TileId>(v);
    };
    auto arity = [&](std::size_t n) {
      if (w.size() != n) throw SyntaxError(line, "wrong number of fields for '" + w[0] + "'");
    };
    if (w[0] == "loner") {
      arity(2);
      f.loners.push_back(id(1));
    } else if (w[0] == "vee") {
      arity(3);
      f.vees.push_back({id(1), id(2)});
    } else if (w[0] == "bidimer") {
      arity(3);
      f.bidimers.push_back({id(1), id(2)});
    } else if (w[0] == "vortex") {
      arity(7);
      if (w[1] != "CW" && w[1] != "CCW") throw SyntaxError(line, "chirality is CW or CCW");
      f.vortices.push_back({{id(3), id(4), id(5), id(6)},
                            id(2),
                            w[1] == "CW" ? Chirality::CW : Chirality::CCW});
    } else if (w[0] == "ray") {
      if (w.size() < 3) throw SyntaxError(line, "a ray lists at least one tile");
      Ray r;
      if (w[1] != "-") r.source = detail::to_int(w[1], line);
      for (std::size_t i = 2; i < w.size(); ++i) r.tiles.push_back(id(i));
      f.rays.push_back(std::move(r));
    } else if (w[0] == "bond") {
      for (std::size_t i = 1; i < w.size(); ++i) {
        const auto comma = w[i].find(',');
        if (comma == std::string::npos) throw SyntaxError(line, "bond cells read 'row,col'");
        f.bond_cells.push_back({detail::to_int(w[i].substr(0, comma), line),
                                detail::to_int(w[i].substr(comma + 1), line)});
      }
    } else {
      throw SyntaxError(line, "unknown feature '" + w[0] + "'");
    }
  }
  for (TileId id : f.loners) f.sources.push_back({SourceType::Loner, {id}});
  for (auto [a, b] : f.vees) f.sources.push_back({SourceType::Vee, {a, b}});
  for (auto [a, b] : f.bidimers) f.sources.push_back({SourceType::Bidimer, {a, b}});
  for (const Vortex& v : f.vortices) {
    std::vector<TileId> ids(v.tiles.begin(), v.tiles.end());
    ids.push_back(v.centre);
    f.sources.push_back({SourceType::Vortex, ids});
  }
  return f;
}

inline std::string render_puzzle(const PuzzleDocument& doc) {
  const PuzzleSpec& p = doc.spec;
  std::string out = "tatami-puzzle " + std::to_string(kFormatVersion) + "\n";
  auto field = [&](const std::string& k, const std::string& v) {
    if (!v.empty()) out += k + ": " + v + "\n";
  };
  auto block = [&](const std::string& name, const std::vector<std::string>& lines) {
    out += name + ":\n";
    for (const auto& l : lines) out += l + "\n";
    out += "end\n";
  };
  auto triples = [](const std::vector<Triple>& ts) {
    std::vector<std::string> lines;
    for (const Triple& t : ts)
      lines.push_back(std::to_string(t.v) + " " + std::to_string(t.h) + " " + std::to_string(t.m));
    return lines;
  };
  auto tiles = [](const std::vector<Tile>& ts) {
    std::vector<std::string> lines;
    for (const Tile& t : ts) lines.push_back(detail::tile_line(t));
    return lines;
  };

  field("id", p.id);
  field("title", p.title);
  field("mode", to_string(p.mode));
  field("difficulty", p.difficulty);
  if (p.budget.max_monominoes) field("max-monominoes", std::to_string(*p.budget.max_monominoes));
  if (p.budget.max_dominoes) field("max-dominoes", std::to_string(*p.budget.max_dominoes));
  if (p.mode == Mode::Noku) field("kinds", doc.ruleset.kinds_string());
  for (const auto& [k, v] : doc.extra_fields) field(k, v);

  std::vector<std::string> region_lines;
  std::istringstream rin(p.region.to_ascii());
  for (std::string l; std::getline(rin, l);) region_lines.push_back(l);
  block("region", region_lines);
  if (p.projections) {
    block("rows", triples(p.projections->rows));
    block("cols", triples(p.projections->cols));
  }
  if (!p.given_tiles.empty()) block("given", tiles(p.given_tiles));
  if (doc.solution) block("solution", tiles(doc.solution->tiles()));
  if (doc.features) block("features", render_features(*doc.features));
  for (const auto& [name, lines] : doc.extra_blocks) block(name, lines);
  return out;
}

inline PuzzleDocument parse_puzzle(std::string_view text) {
  struct Line {
    int number;
    std::string text;
  };
  std::vector<Line> lines;
  {
    int n = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      const auto end = nl == std::string_view::npos ? text.size() : nl;
      lines.push_back({++n, detail::rtrim(text.substr(pos, end - pos))});
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() && lines[i].text.find_first_not_of(" \t") == std::string::npos) ++i;
  };
  skip_blank();
  if (i == lines.size()) throw SyntaxError(1, "empty document");
  {
    const auto w = detail::words(lines[i].text);
    if (w.size() != 2 || w[0] != "tatami-puzzle")
      throw SyntaxError(lines[i].number, "expected header 'tatami-puzzle 1'");
    if (w[1] != std::to_string(kFormatVersion))
      throw Error(ErrorCode::SchemaError, "unsupported format version " + w[1]);
    ++i;
  }

  std::map<std::string, std::pair<int, std::string>> fields;
  std::map<std::string, std::pair<int, std::vector<std::pair<int, std::string>>>> blocks;
  PuzzleDocument doc;
  static const char* const known_fields[] = {"id",  "title", "mode", "difficulty",
                                             "max-monominoes", "max-dominoes", "kinds"};
  static const char* const known_blocks[] = {"region", "rows",     "cols",
                                             "given",  "solution", "features"};
  auto is_known = [](const auto& table, const std::string& k) {
    return std::find_if(std::begin(table), std::end(table),
                        [&](const char* s) { return k == s; }) != std::end(table);
  };

  for (;;) {
    skip_blank();
    if (i == lines.size()) break;
    const Line& l = lines[i++];
    const auto colon = l.text.find(':');
    if (colon == std::string::npos) throw SyntaxError(l.number, "expected 'key: value'");
    const std::string key = detail::trim(std::string_view(l.text).substr(0, colon));
    const std::string value = detail::trim(std::string_view(l.text).substr(colon + 1));
    if (!detail::valid_key(key)) throw SyntaxError(l.number, "malformed key '" + key + "'");
    if (fields.count(key) || blocks.count(key))
      throw SyntaxError(l.number, "duplicate entry '" + key + "'");
    if (!value.empty()) {
      if (is_known(known_blocks, key))
        throw SyntaxError(l.number, "'" + key + "' is a block; put its lines below it");
      fields[key] = {l.number, value};
      if (!is_known(known_fields, key)) doc.extra_fields.push_back({key, value});
      continue;
    }
    std::vector<std::pair<int, std::string>> body;
    bool closed = false;
    while (i < lines.size()) {
      const Line& b = lines[i++];
      if (detail::trim(b.text) == "end") {
        closed = true;
        break;
      }
      body.push_back({b.number, b.text});
    }
    if (!closed) throw SyntaxError(l.number, "block '" + key + "' is missing its 'end'");
    if (!is_known(known_blocks, key)) {
      std::vector<std::string> raw;
      for (const auto& [n, t] : body) raw.push_back(t);
      doc.extra_blocks.push_back({key, raw});
    }
    blocks[key] = {l.number, std::move(body)};
  }

  auto schema = [](const std::string& why) { return Error(ErrorCode::SchemaError, why); };
  PuzzleSpec& p = doc.spec;
  auto get = [&](const char* k) -> std::optional<std::pair<int, std::string>> {
    auto it = fields.find(k);
    if (it == fields.end()) return std::nullopt;
    return it->second;
  };

  auto mode_field = get("mode");
  if (!mode_field) throw schema("missing field 'mode'");
  auto mode = mode_from_string(mode_field->second);
  if (!mode) throw SyntaxError(mode_field->first, "unknown mode '" + mode_field->second + "'");
  p.mode = *mode;
  if (auto f = get("id")) p.id = f->second;
  if (auto f = get("title")) p.title = f->second;
  if (auto f = get("difficulty")) p.difficulty = f->second;
  if (auto f = get("max-monominoes")) p.budget.max_monominoes = detail::to_int(f->second, f->first);
  if (auto f = get("max-dominoes")) p.budget.max_dominoes = detail::to_int(f->second, f->first);
  if (auto f = get("kinds")) {
    if (p.mode != Mode::Noku) throw schema("'kinds' applies to noku documents only");
    doc.ruleset.allowed = {false, false, false};
    for (char ch : f->second) {
      auto k = kind_from_string(std::string(1, ch));
      if (!k) throw SyntaxError(f->first, "kinds are drawn from M, H, V");
      doc.ruleset.allowed[static_cast<int>(*k)] = true;
    }
    if (f->second.empty()) throw schema("noku needs at least one tile kind");
  }

  auto region_block = blocks.find("region");
  if (region_block == blocks.end()) throw schema("missing block 'region'");
  {
    std::string ascii;
    for (const auto& [n, t] : region_block->second.second) ascii += t + "\n";
    try {
      p.region = region_from_ascii(ascii);
    } catch (const Error&) {
      throw schema("region block has no cells");
    }
  }

  auto read_triples = [&](const char* name) {
    std::vector<Triple> out;
    for (const auto& [n, t] : blocks.at(name).second) {
      const auto w = detail::words(t);
      if (w.empty()) continue;
      if (w.size() != 3) throw SyntaxError(n, "triples read 'v h m'");
      out.push_back({detail::to_int(w[0], n), detail::to_int(w[1], n), detail::to_int(w[2], n)});
    }
    return out;
  };
  const bool has_rows = blocks.count("rows"), has_cols = blocks.count("cols");
  if (has_rows != has_cols) throw schema("projections need both 'rows' and 'cols'");
  if (has_rows) p.projections = Projections{read_triples("rows"), read_triples("cols")};

  auto read_tiles = [&](const char* name) {
    std::vector<Tile> out;
    for (const auto& [n, t] : blocks.at(name).second) {
      if (detail::trim(t).empty()) continue;
      out.push_back(detail::parse_tile(t, n, static_cast<TileId>(out.size() + 1)));
    }
    return out;
  };
  if (blocks.count("given")) p.given_tiles = read_tiles("given");

  if (p.mode == Mode::Noku) {
    if (!p.given_tiles.empty() || p.projections) throw schema("noku documents carry no tiles");
  } else {
    try {
      initial_covering(p);
    } catch (const Error& e) {
      throw schema(e.what());
    }
  }

  if (blocks.count("solution")) {
    std::vector<Tile> tiles = read_tiles("solution");
    try {
      doc.solution = Covering::from_tiles(p.region, tiles);
    } catch (const Error& e) {
      throw schema(std::string("solution is not a legal covering: ") + e.what());
    }
  }
  if (blocks.count("features")) {
    if (!doc.solution) throw schema("features need a solution block");
    doc.features = parse_features(blocks.at("features").second);
  }
  return doc;
}

inline PuzzleDocument load_puzzle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::UnknownPuzzle, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_puzzle(ss.str());
}

// Every *.tatami file of a directory, keyed by document id (the file stem when the id is absent).
inline std::map<std::string, PuzzleDocument> load_library(const std::filesystem::path& dir) {
  std::map<std::string, PuzzleDocument> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".tatami") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    PuzzleDocument d = load_puzzle(f);
    if (d.spec.id.empty()) d.spec.id = f.stem().string();
    out.insert_or_assign(d.spec.id, std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Renders.

inline std::string render_ascii(const Covering& covering) {
  const Region& region = covering.region();
  const std::string bar = "+" + std::string(static_cast<std::size_t>(region.width()), '-') + "+\n";
  std::string out = bar;
  for (int r = 0; r < region.height(); ++r) {
    out += '|';
    for (int c = 0; c < region.width(); ++c) {
      const Cell cell{r, c};
      if (!region.contains(cell)) {
        out += ' ';
        continue;
      }
      const Tile* t = covering.tile_at(cell);
      if (!t) {
        out += '.';
        continue;
      }
      const bool first = t->anchor == cell;
      switch (t->kind) {
        case TileKind::Monomino: out += "•"; break;
        case TileKind::HDomino: out += first ? '<' : '>'; break;
        case TileKind::VDomino: out += first ? '^' : 'v'; break;
      }
    }
    out += "|\n";
  }
  return out + bar;
}

namespace detail {

inline constexpr int kSvgCell = 24;
inline constexpr int kSvgInset = 2;

inline void svg_panel(std::string& out, const Covering& covering, int ox, int oy) {
  const Region& region = covering.region();
  const int u = kSvgCell;
  auto num = [](int v) { return std::to_string(v); };
  out += "<g transform=\"translate(" + num(ox) + "," + num(oy) + ")\">\n";
  for (const Cell& c : region.cells())
    out += "<rect class=\"cell\" x=\"" + num(c.col * u) + "\" y=\"" + num(c.row * u) +
           "\" width=\"" + num(u) + "\" height=\"" + num(u) + "\"/>\n";
  for (const Tile& t : covering.tiles_by_position()) {
    const int w = t.kind == TileKind::HDomino ? 2 * u : u;
    const int h = t.kind == TileKind::VDomino ? 2 * u : u;
    const char* cls = t.kind == TileKind::Monomino ? "monomino" : "domino";
    std::string extra;
    if (t.color_tag) extra = " data-tag=\"" + *t.color_tag + "\"";
    out += std::string("<rect class=\"") + cls + "\" x=\"" + num(t.anchor.col * u + kSvgInset) +
           "\" y=\"" + num(t.anchor.row * u + kSvgInset) + "\" width=\"" +
           num(w - 2 * kSvgInset) + "\" height=\"" + num(h - 2 * kSvgInset) + "\" rx=\"" +
           num(t.kind == TileKind::Monomino ? u / 2 - kSvgInset : 5) + "\"" + extra + "/>\n";
  }
  out += "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" + num(region.width() * u) +
         "\" height=\"" + num(region.height() * u) + "\"/>\n";
  out += "</g>\n";
}

inline std::string svg_open(int width, int height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) +
         "\">\n<style>.cell{fill:#f4efe1;stroke:#d8cfb4;stroke-width:0.5}"
         ".domino{fill:#8fae6b;stroke:#3f5a2a;stroke-width:1.5}"
         ".monomino{fill:#d9a441;stroke:#7a5510;stroke-width:1.5}"
         "[data-tag=given]{fill:#9c9c9c}"
         ".frame{fill:none;stroke:#333;stroke-width:2}</style>\n";
}

}  // namespace detail

inline std::string render_svg(const Covering& covering) {
  const int pad = 8;
  const Region& region = covering.region();
  std::string out = detail::svg_open(region.width() * detail::kSvgCell + 2 * pad,
                                     region.height() * detail::kSvgCell + 2 * pad);
  detail::svg_panel(out, covering, pad, pad);
  return out + "</svg>\n";
}

// Panels laid out row by row, ceil(sqrt(n)) per row, each sized to the largest covering.
inline std::string render_svg(const std::vector<Covering>& gallery) {
  const int pad = 8;
  const int n = static_cast<int>(gallery.size());
  int per_row = 1;
  while (per_row * per_row < n) ++per_row;
  int cw = 0, ch = 0;
  for (const Covering& c : gallery) {
    cw = std::max(cw, c.region().width() * detail::kSvgCell);
    ch = std::max(ch, c.region().height() * detail::kSvgCell);
  }
  const int rows = n == 0 ? 0 : (n + per_row - 1) / per_row;
  const int cols = n == 0 ? 0 : std::min(n, per_row);
  std::string out = detail::svg_open(cols * (cw + pad) + pad, rows * (ch + pad) + pad);
  for (int i = 0; i < n; ++i)
    detail::svg_panel(out, gallery[i], pad + (i % per_row) * (cw + pad),
                      pad + (i / per_row) * (ch + pad));
  return out + "</svg>\n";
}

// ---------------------------------------------------------------------------------------------
// Tomoku generator.

enum class Difficulty { NoBacktrack, Any };

inline const char* to_string(Difficulty d) {
  return d == Difficulty::NoBacktrack ? "no-backtrack" : "any";
}

inline constexpr int kMaxGeneratorAttempts = 500;

namespace detail {

// Uniform enough for shuffling three kinds and identical on every platform, unlike
// std::uniform_int_distribution.
inline std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline Covering random_covering(const Region& region, std::mt19937_64& rng) {
  SearchOptions opt;
  opt.order = [&rng](std::array<TileKind, 3>& kinds) {
    for (std::size_t i = kinds.size() - 1; i > 0; --i)
      std::swap(kinds[i], kinds[pick(rng, i + 1)]);
  };
  SolveOutcome out = search_completions(Covering(region), {}, 1, opt);
  if (out.solutions.empty()) throw Error(ErrorCode::BudgetExceeded, "region has no covering");
  return out.solutions.front();
}

}  // namespace detail

inline PuzzleDocument generate_tomoku(int rows, int cols, std::uint64_t seed,
                                      Difficulty difficulty = Difficulty::Any) {
  if (rows < 1 || cols < 1 || rows * cols > 64)
    throw Error(ErrorCode::RegionTooLarge, "tomoku generator handles areas up to 64");
  std::mt19937_64 rng(seed);
  const Region region = Region::rectangle(rows, cols);
  for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
    const Covering source = detail::random_covering(region, rng);
    PuzzleSpec p = tomoku_from_covering(source);
    if (difficulty == Difficulty::NoBacktrack) {
      SolveOutcome check = solve(p, 1);
      if (check.stats.backtracks != 0) continue;
    }
    p.id = "tomoku-" + std::to_string(rows) + "x" + std::to_string(cols) + "-" +
           std::to_string(seed);
    p.title = "Tomoku " + std::to_string(rows) + "x" + std::to_string(cols);
    p.difficulty = to_string(difficulty);
    return make_document(std::move(p), source);
  }
  throw Error(ErrorCode::BudgetExceeded, "no instance met the difficulty within the attempt budget");
}

}  // namespace tatami
