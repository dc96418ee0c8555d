#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tatami/covering.hpp"
#include "tatami/error.hpp"
#include "tatami/noku.hpp"
#include "tatami/projections.hpp"
#include "tatami/puzzle_io.hpp"
#include "tatami/solver.hpp"
#include "tatami/structure.hpp"

namespace tatami::service {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Largest board on which the engine plays Noku against a human.
inline constexpr int kMaxAiArea = 16;

struct LogEntry {
  enum class Op { Place, Remove };

  Op op = Op::Place;
  TileKind kind = TileKind::Monomino;
  Cell anchor;
  TileId tile_id = 0;
  bool by_ai = false;
};

struct SessionOptions {
  bool vs_ai = false;
  Player human = Player::One;
};

struct Session {
  std::string id;
  PuzzleDocument document;
  SessionOptions options;
  Covering covering;
  std::vector<LogEntry> log;
  std::mutex mutex;
};

struct Response {
  int status = 200;
  json body;
};

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::SessionNotFound:
    case ErrorCode::UnknownPuzzle: return 404;
    case ErrorCode::NotYourTurn:
    case ErrorCode::PuzzleComplete:
    case ErrorCode::RemovalForbidden:
    case ErrorCode::HintUnavailable:
    case ErrorCode::WrongMode: return 409;
    case ErrorCode::BadRequest: return 400;
    default: return 422;
  }
}

inline json error_body(ErrorCode code, const std::string& message) {
  return {{"schema_version", kSchemaVersion},
          {"error", {{"code", to_string(code)}, {"message", message}}}};
}

// ---------------------------------------------------------------------------------------------
// JSON views.

inline json to_json(Cell c) { return {{"row", c.row}, {"col", c.col}}; }
inline json to_json(Vertex v) { return {{"row", v.row}, {"col", v.col}}; }
inline json to_json(const Triple& t) { return {{"v", t.v}, {"h", t.h}, {"m", t.m}}; }

inline json to_json(const Tile& t) {
  json j = {{"id", t.id}, {"kind", to_string(t.kind)}, {"row", t.anchor.row},
            {"col", t.anchor.col}};
  if (t.color_tag) j["tag"] = *t.color_tag;
  return j;
}

inline json to_json(const PlacementVerdict& v) {
  json j = {{"kind", to_string(v.kind)}};
  json cells = json::array(), tiles = json::array(), vertices = json::array();
  for (const Cell& c : v.cells) cells.push_back(to_json(c));
  for (TileId id : v.tiles) tiles.push_back(id);
  for (const Vertex& x : v.vertices) vertices.push_back(to_json(x));
  j["cells"] = cells;
  j["tiles"] = tiles;
  j["vertices"] = vertices;
  return j;
}

inline json to_json(const LogEntry& e) {
  if (e.op == LogEntry::Op::Remove) return {{"op", "remove"}, {"tile_id", e.tile_id}};
  return {{"op", "place"}, {"kind", to_string(e.kind)}, {"row", e.anchor.row},
          {"col", e.anchor.col}, {"by_ai", e.by_ai}};
}

inline LogEntry log_entry_from_json(const json& j) {
  LogEntry e;
  if (j.at("op") == "remove") {
    e.op = LogEntry::Op::Remove;
    e.tile_id = j.at("tile_id").get<TileId>();
    return e;
  }
  auto kind = kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::BadRequest, "bad tile kind in log");
  e.kind = *kind;
  e.anchor = {j.at("row").get<int>(), j.at("col").get<int>()};
  e.by_ai = j.value("by_ai", false);
  return e;
}

// ---------------------------------------------------------------------------------------------
// Session rules, independent of transport.

inline bool kind_allowed(const Session& s, TileKind k) {
  const PuzzleSpec& p = s.document.spec;
  if (p.mode == Mode::Noku) return s.document.ruleset.allows(k);
  if (p.mode == Mode::LazyPaver && k == TileKind::Monomino) return false;
  if (k == TileKind::Monomino && p.budget.max_monominoes &&
      s.covering.count(TileKind::Monomino) >= *p.budget.max_monominoes)
    return false;
  if (k != TileKind::Monomino && p.budget.max_dominoes &&
      s.covering.count(TileKind::HDomino) + s.covering.count(TileKind::VDomino) >=
          *p.budget.max_dominoes)
    return false;
  return true;
}

inline bool noku_has_move(const Session& s) {
  return !legal_moves(GameState{s.covering, player_to_move(s.covering)}, s.document.ruleset)
              .empty();
}

inline bool solved(const Session& s) {
  const PuzzleSpec& p = s.document.spec;
  if (p.mode == Mode::Noku) return !noku_has_move(s);
  if (!is_complete(s.covering)) return false;
  if (p.mode == Mode::Tomoku) return projections(s.covering) == *p.projections;
  return true;
}

inline json state_json(const Session& s) {
  const PuzzleSpec& p = s.document.spec;
  const Region& region = p.region;
  json j = {{"schema_version", kSchemaVersion}, {"session_id", s.id},  {"puzzle_id", p.id},
            {"title", p.title},                 {"mode", to_string(p.mode)},
            {"height", region.height()},        {"width", region.width()}};
  json mask = json::array();
  std::istringstream rin(region.to_ascii());
  for (std::string l; std::getline(rin, l);) {
    l.resize(static_cast<std::size_t>(region.width()), '.');
    mask.push_back(l);
  }
  j["region"] = mask;
  json tiles = json::array();
  for (const Tile& t : s.covering.tiles()) tiles.push_back(to_json(t));
  j["tiles"] = tiles;
  json board = json::array();
  std::istringstream bin(render_ascii(s.covering));
  for (std::string l; std::getline(bin, l);) board.push_back(l);
  j["board"] = board;
  j["move_count"] = s.log.size();
  j["complete"] = is_complete(s.covering);
  j["solved"] = solved(s);

  if (p.mode == Mode::Tomoku) {
    Projections now = empty_projections(region.height(), region.width());
    for (const Tile& t : s.covering.tiles()) add_to_projections(now, t.kind, t.anchor);
    auto lines = [](const std::vector<Triple>& target, const std::vector<Triple>& current) {
      json a = json::array();
      for (std::size_t i = 0; i < target.size(); ++i)
        a.push_back({{"target", to_json(target[i])},
                     {"current", to_json(current[i])},
                     {"matched", target[i] == current[i]}});
      return a;
    };
    j["tomoku"] = {{"rows", lines(p.projections->rows, now.rows)},
                   {"cols", lines(p.projections->cols, now.cols)}};
  }
  if (p.mode == Mode::Noku) {
    const Player to_move = player_to_move(s.covering);
    const bool over = !noku_has_move(s);
    json n = {{"kinds", s.document.ruleset.kinds_string()},
              {"to_move", player_number(to_move)},
              {"vs_ai", s.options.vs_ai},
              {"human", player_number(s.options.human)},
              {"game_over", over}};
    n["winner"] = over ? json(player_number(other(to_move))) : json(nullptr);
    j["noku"] = n;
  }
  return j;
}

inline json hint_json(const Session& s) {
  if (s.document.spec.mode == Mode::Noku)
    throw Error(ErrorCode::HintUnavailable, "noku has no hints");
  const auto findings = forced_moves(s.covering, constraints_for(s.document.spec));
  json deductions = json::array(), contradictions = json::array();
  for (const Finding& f : findings) {
    if (const auto* d = std::get_if<Deduction>(&f)) {
      deductions.push_back({{"kind", to_string(d->kind)},
                            {"row", d->anchor.row},
                            {"col", d->anchor.col},
                            {"cause", to_json(d->cause)}});
    } else {
      const auto& c = std::get<Contradiction>(f);
      json x = {{"reason", to_string(c.reason)}, {"vertex", to_json(c.vertex)}};
      x["cell"] = c.cell ? to_json(*c.cell) : json(nullptr);
      contradictions.push_back(x);
    }
  }
  const char* status = !contradictions.empty() ? "contradiction"
                       : !deductions.empty()   ? "deductions"
                                               : "no-forced-move";
  return {{"schema_version", kSchemaVersion},
          {"status", status},
          {"deductions", deductions},
          {"contradictions", contradictions}};
}

// Applies one logged operation; the log entry is appended only on success.
inline void apply(Session& s, const LogEntry& e) {
  if (e.op == LogEntry::Op::Remove) {
    s.covering = remove(s.covering, e.tile_id);
  } else {
    s.covering = place(s.covering, e.kind, e.anchor);
  }
  s.log.push_back(e);
}

inline void ai_reply(Session& s) {
  if (!noku_has_move(s)) return;
  const GameVerdict v =
      solve_noku(GameState{s.covering, player_to_move(s.covering)}, s.document.ruleset);
  apply(s, LogEntry{LogEntry::Op::Place, v.best_move->kind, v.best_move->anchor, 0, true});
}

inline void start(Session& s) {
  const PuzzleSpec& p = s.document.spec;
  if (p.mode == Mode::Noku) {
    s.covering = Covering(p.region);
    if (s.options.vs_ai) {
      if (p.region.area() > kMaxAiArea)
        throw Error(ErrorCode::BudgetExceeded, "board too large to play against the engine");
      if (s.options.human == Player::Two) ai_reply(s);
    }
  } else {
    if (s.options.vs_ai) throw Error(ErrorCode::WrongMode, "only noku has an engine opponent");
    s.covering = initial_covering(p);
  }
}

// Result of a placement attempt: the verdict always, plus the engine's reply when there was one.
struct PlaceResult {
  PlacementVerdict verdict;
  std::optional<LogEntry> ai_move;
};

inline PlaceResult attempt_place(Session& s, TileKind kind, Cell anchor) {
  const PuzzleSpec& p = s.document.spec;
  if (solved(s)) throw Error(ErrorCode::PuzzleComplete, "the puzzle is already finished");
  if (p.mode == Mode::Noku && s.options.vs_ai && player_to_move(s.covering) != s.options.human)
    throw Error(ErrorCode::NotYourTurn, "waiting for the engine");
  PlaceResult out{can_place(s.covering, kind, anchor), std::nullopt};
  if (!out.verdict.legal()) return out;
  if (!kind_allowed(s, kind))
    throw Error(ErrorCode::KindNotAllowed,
                std::string("this game does not allow ") + to_string(kind) + " here");
  apply(s, LogEntry{LogEntry::Op::Place, kind, anchor, 0, false});
  if (p.mode == Mode::Noku && s.options.vs_ai && noku_has_move(s)) {
    ai_reply(s);
    out.ai_move = s.log.back();
  }
  return out;
}

inline void attempt_remove(Session& s, TileId id) {
  if (s.document.spec.mode == Mode::Noku)
    throw Error(ErrorCode::RemovalForbidden, "noku has no takebacks");
  const Tile* t = s.covering.find(id);
  if (!t) throw Error(ErrorCode::UnknownTile, "no tile " + std::to_string(id));
  if (s.document.spec.mode == Mode::Consultant && t->color_tag == std::string(kGivenTag))
    throw Error(ErrorCode::RemovalForbidden, "given tiles stay put");
  apply(s, LogEntry{LogEntry::Op::Remove, TileKind::Monomino, {}, id, false});
}

// Plays the engine's move for the side to move; in a vs-engine game the engine also answers.
inline LogEntry engine_move(Session& s) {
  if (s.document.spec.mode != Mode::Noku) throw Error(ErrorCode::WrongMode, "not a noku session");
  if (!noku_has_move(s)) throw Error(ErrorCode::PuzzleComplete, "the game is over");
  if (s.document.spec.region.area() > kMaxAiArea)
    throw Error(ErrorCode::BudgetExceeded, "board too large for the engine");
  const bool humans_turn = player_to_move(s.covering) == s.options.human;
  ai_reply(s);
  LogEntry first = s.log.back();
  if (s.options.vs_ai && humans_turn) ai_reply(s);
  return first;
}

// ---------------------------------------------------------------------------------------------

class Service {
 public:
  explicit Service(std::map<std::string, PuzzleDocument> library,
                   std::optional<std::filesystem::path> log_dir = std::nullopt)
      : library_(std::move(library)), log_dir_(std::move(log_dir)) {
    if (log_dir_) {
      std::filesystem::create_directories(*log_dir_);
      restore();
    }
  }

  const std::map<std::string, PuzzleDocument>& library() const noexcept { return library_; }

  std::shared_ptr<Session> create(const PuzzleDocument& doc, SessionOptions options = {}) {
    auto s = std::make_shared<Session>();
    s->document = doc;
    s->options = options;
    s->id = "s" + std::to_string(++counter_);
    start(*s);
    persist_header(*s);
    for (const LogEntry& e : s->log) persist(*s, e);
    std::unique_lock lock(sessions_mutex_);
    sessions_[s->id] = s;
    return s;
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::SessionNotFound, "no session " + id);
    return it->second;
  }

  // Rebuilds a session from its document and log on a fresh board.
  static std::shared_ptr<Session> replay(const std::string& id, const PuzzleDocument& doc,
                                         SessionOptions options,
                                         const std::vector<LogEntry>& log) {
    auto s = std::make_shared<Session>();
    s->id = id;
    s->document = doc;
    s->options = options;
    const PuzzleSpec& p = doc.spec;
    s->covering = p.mode == Mode::Noku ? Covering(p.region) : initial_covering(p);
    for (const LogEntry& e : log) apply(*s, e);
    return s;
  }

  Response handle(std::string_view method, std::string_view path, std::string_view body = {}) {
    try {
      return route(method, path, body);
    } catch (const Error& e) {
      return {http_status(e.code()), error_body(e.code(), e.what())};
    } catch (const json::exception& e) {
      return {400, error_body(ErrorCode::BadRequest, e.what())};
    }
  }

 private:
  static std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> out;
    const auto q = path.find('?');
    if (q != std::string_view::npos) path = path.substr(0, q);
    std::size_t i = 0;
    while (i < path.size()) {
      const auto j = path.find('/', i);
      const auto end = j == std::string_view::npos ? path.size() : j;
      if (end > i) out.emplace_back(path.substr(i, end - i));
      i = end + 1;
    }
    return out;
  }

  static json parse_body(std::string_view body) {
    if (body.empty()) return json::object();
    json j = json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::BadRequest, "request body must be an object");
    return j;
  }

  Response route(std::string_view method, std::string_view path, std::string_view body) {
    const auto parts = split_path(path);
    auto not_allowed = [] {
      return Response{405, error_body(ErrorCode::BadRequest, "method not allowed")};
    };
    if (parts.size() == 1 && parts[0] == "puzzles") {
      if (method != "GET") return not_allowed();
      return {200, list_puzzles()};
    }
    if (parts.empty() || parts[0] != "sessions")
      return {404, error_body(ErrorCode::BadRequest, "no such route")};
    if (parts.size() == 1) {
      if (method != "POST") return not_allowed();
      return create_from_request(parse_body(body));
    }
    auto session = find(parts[1]);
    std::lock_guard lock(session->mutex);
    Session& s = *session;
    if (parts.size() == 2) {
      if (method != "GET") return not_allowed();
      return {200, state_json(s)};
    }
    const std::string& action = parts[2];
    if (parts.size() == 3 && action == "place") {
      if (method != "POST") return not_allowed();
      const json req = parse_body(body);
      auto kind = kind_from_string(req.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::BadRequest, "kind is M, H or V");
      const std::size_t before = s.log.size();
      PlaceResult r = attempt_place(s, *kind, {req.at("row").get<int>(), req.at("col").get<int>()});
      persist_from(s, before);
      json out = {{"schema_version", kSchemaVersion},
                  {"verdict", to_json(r.verdict)},
                  {"state", state_json(s)}};
      out["ai_move"] = r.ai_move ? to_json(*r.ai_move) : json(nullptr);
      return {200, out};
    }
    if (parts.size() == 3 && action == "remove") {
      if (method != "POST") return not_allowed();
      const json req = parse_body(body);
      const std::size_t before = s.log.size();
      attempt_remove(s, req.at("tile_id").get<TileId>());
      persist_from(s, before);
      return {200, {{"schema_version", kSchemaVersion}, {"state", state_json(s)}}};
    }
    if (parts.size() == 3 && action == "hint") {
      if (method != "GET") return not_allowed();
      return {200, hint_json(s)};
    }
    if (parts.size() == 4 && action == "noku" && parts[3] == "ai-move") {
      if (method != "POST") return not_allowed();
      const std::size_t before = s.log.size();
      const LogEntry e = engine_move(s);
      persist_from(s, before);
      return {200, {{"schema_version", kSchemaVersion},
                    {"move", to_json(e)},
                    {"state", state_json(s)}}};
    }
    return {404, error_body(ErrorCode::BadRequest, "no such route")};
  }

  json list_puzzles() const {
    json items = json::array();
    for (const auto& [id, doc] : library_) {
      const PuzzleSpec& p = doc.spec;
      items.push_back({{"id", id},
                       {"title", p.title},
                       {"mode", to_string(p.mode)},
                       {"difficulty", p.difficulty},
                       {"height", p.region.height()},
                       {"width", p.region.width()}});
    }
    return {{"schema_version", kSchemaVersion}, {"puzzles", items}};
  }

  static SessionOptions options_from(const json& req) {
    SessionOptions o;
    o.vs_ai = req.value("vs_ai", false);
    const int human = req.value("human", 1);
    if (human != 1 && human != 2) throw Error(ErrorCode::BadRequest, "human is player 1 or 2");
    o.human = human == 1 ? Player::One : Player::Two;
    return o;
  }

  Response create_from_request(const json& req) {
    PuzzleDocument doc;
    if (req.contains("puzzle_id")) {
      const std::string id = req.at("puzzle_id").get<std::string>();
      auto it = library_.find(id);
      if (it == library_.end()) throw Error(ErrorCode::UnknownPuzzle, "no puzzle " + id);
      doc = it->second;
    } else if (req.contains("document")) {
      try {
        doc = parse_puzzle(req.at("document").get<std::string>());
      } catch (const Error& e) {
        throw Error(ErrorCode::SchemaError, e.what());
      }
    } else {
      throw Error(ErrorCode::BadRequest, "give a puzzle_id or a document");
    }
    auto s = create(doc, options_from(req));
    std::lock_guard lock(s->mutex);
    return {201, state_json(*s)};
  }

  // Log files: the first line describes the session, every further line is one LogEntry.
  std::optional<std::filesystem::path> log_path(const Session& s) const {
    if (!log_dir_) return std::nullopt;
    return *log_dir_ / (s.id + ".log");
  }

  void persist_header(const Session& s) {
    auto path = log_path(s);
    if (!path) return;
    std::ofstream out(*path, std::ios::trunc);
    json h = {{"session", s.id},
              {"document", render_puzzle(s.document)},
              {"vs_ai", s.options.vs_ai},
              {"human", player_number(s.options.human)}};
    out << h.dump() << "\n";
  }

  void persist(const Session& s, const LogEntry& e) {
    auto path = log_path(s);
    if (!path) return;
    std::ofstream out(*path, std::ios::app);
    out << to_json(e).dump() << "\n";
  }

  void persist_from(const Session& s, std::size_t first) {
    for (std::size_t i = first; i < s.log.size(); ++i) persist(s, s.log[i]);
  }

  void restore() {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(*log_dir_))
      if (e.path().extension() == ".log") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::ifstream in(f);
      std::string line;
      if (!std::getline(in, line)) continue;
      const json h = json::parse(line);
      std::vector<LogEntry> log;
      while (std::getline(in, line))
        if (!line.empty()) log.push_back(log_entry_from_json(json::parse(line)));
      const std::string id = h.at("session").get<std::string>();
      auto s = replay(id, parse_puzzle(h.at("document").get<std::string>()), options_from(h), log);
      sessions_[id] = s;
      // Keep new ids clear of restored ones.
      if (id.size() > 1 && id[0] == 's') {
        try {
          counter_ = std::max<std::uint64_t>(counter_.load(), std::stoull(id.substr(1)));
        } catch (const std::exception&) {
        }
      }
    }
  }

  std::map<std::string, PuzzleDocument> library_;
  std::optional<std::filesystem::path> log_dir_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::atomic<std::uint64_t> counter_{0};
};

}  // namespace tatami::service
