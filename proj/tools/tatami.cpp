// Command-line front end: solve, count, enumerate, generate-tomoku, noku, render, serve.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tatami/enumeration.hpp"
#include "tatami/http.hpp"
#include "tatami/noku.hpp"
#include "tatami/puzzle_io.hpp"
#include "tatami/service.hpp"
#include "tatami/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tatami;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

const char* kPuzzleDirVar = "TATAMI_PUZZLES";

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A puzzle argument is a path, or a name looked up in the default puzzle directory.
fs::path resolve_puzzle(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  if (const char* dir = std::getenv(kPuzzleDirVar)) {
    for (const fs::path& p : {fs::path(dir) / arg, fs::path(dir) / (arg + ".tatami")})
      if (fs::exists(p)) return p;
  }
  throw Usage("no puzzle file '" + arg + "'");
}

json covering_json(const Covering& c) {
  json tiles = json::array();
  for (const Tile& t : c.tiles_by_position()) tiles.push_back(service::to_json(t));
  return tiles;
}

std::string kinds_of(const Ruleset& r) { return r.kinds_string(); }

Ruleset ruleset_from(const std::string& kinds) {
  Ruleset r;
  r.allowed = {false, false, false};
  for (char ch : kinds) {
    auto k = kind_from_string(std::string(1, ch));
    if (!k) throw Usage("--kinds takes letters from M, H, V");
    r.allowed[static_cast<int>(*k)] = true;
  }
  if (kinds.empty()) throw Usage("--kinds needs at least one kind");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tatami coverings: solvers, counts, generator, Noku and play service"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for enumeration and census")
      ->check(CLI::Range(1, 256));

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve a puzzle document");
  std::string solve_file;
  bool solve_all_flag = false;
  std::size_t limit = 1;
  std::string render_as;
  solve_cmd->add_option("puzzle", solve_file, "Puzzle file or name")->required();
  auto* all_opt = solve_cmd->add_flag("--all", solve_all_flag, "Every solution");
  solve_cmd->add_option("--limit", limit, "Maximum solutions")
      ->check(CLI::PositiveNumber)
      ->excludes(all_opt);
  solve_cmd->add_option("--render", render_as, "Render solutions")
      ->check(CLI::IsMember({"ascii", "svg"}));

  // count
  auto* count_cmd = app.add_subcommand("count", "Coverings of the n x n square with m monominoes");
  int n = 0, m = 0;
  bool oracle = false;
  count_cmd->add_option("--n", n)->required()->check(CLI::Range(1, 62));
  count_cmd->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
  count_cmd->add_flag("--oracle", oracle, "Count by exhaustive enumeration as well");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "Write every covering of a rectangle");
  int rows = 0, cols = 0;
  std::optional<int> monos, verticals, horizontals;
  std::string out_dir;
  enum_cmd->add_option("--rows", rows)->required()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--cols", cols)->required()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--monominoes", monos);
  enum_cmd->add_option("--vertical", verticals);
  enum_cmd->add_option("--horizontal", horizontals);
  enum_cmd->add_option("--out", out_dir, "Directory for coverings.txt and gallery.svg")
      ->required();

  // generate-tomoku
  auto* gen_cmd = app.add_subcommand("generate-tomoku", "Generate a Tomoku instance");
  int grows = 0, gcols = 0;
  std::uint64_t seed = 0;
  bool no_backtrack = false;
  std::string gen_out;
  gen_cmd->add_option("--rows", grows)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cols", gcols)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", seed)->required();
  gen_cmd->add_flag("--no-backtrack", no_backtrack, "Only instances solvable without backtracking");
  gen_cmd->add_option("--out", gen_out, "Write the document here instead of stdout");

  // noku
  auto* noku_cmd = app.add_subcommand("noku", "Solve Noku on a rectangle");
  int nrows = 0, ncols = 0;
  bool census = false;
  std::optional<std::uint64_t> calibrate_target;
  std::string kinds = kinds_of(kDefaultNokuRuleset);
  bool exclude_root = false;
  noku_cmd->add_option("--rows", nrows)->required()->check(CLI::PositiveNumber);
  noku_cmd->add_option("--cols", ncols)->required()->check(CLI::PositiveNumber);
  noku_cmd->add_flag("--census", census, "Count the nodes of the full game tree");
  noku_cmd->add_option("--calibrate", calibrate_target,
                       "Search the ruleset space for a census equal to this count");
  noku_cmd->add_option("--kinds", kinds, "Allowed tile kinds")->capture_default_str();
  noku_cmd->add_flag("--exclude-root", exclude_root, "Census without the root node");

  // render
  auto* render_cmd = app.add_subcommand("render", "Render a puzzle document");
  std::string render_file;
  std::string render_fmt = "ascii";
  render_cmd->add_option("puzzle", render_file)->required();
  render_cmd->add_option("--as", render_fmt)->check(CLI::IsMember({"ascii", "svg", "doc"}));

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP play service");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string puzzle_dir;
  std::string log_dir;
  serve_cmd->add_option("--port", port)->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--puzzles", puzzle_dir, "Puzzle library directory");
  serve_cmd->add_option("--logs", log_dir, "Persist session logs here and replay them on start");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  const bool as_json = format == "json";

  try {
    if (*solve_cmd) {
      PuzzleDocument doc = load_puzzle(resolve_puzzle(solve_file));
      if (doc.spec.mode == Mode::Noku) throw Usage("noku documents are games; use 'noku'");
      const std::size_t cap = solve_all_flag ? std::numeric_limits<std::size_t>::max() : limit;
      SolveOutcome out = solve(doc.spec, cap);
      if (as_json) {
        json sols = json::array();
        for (const Covering& c : out.solutions) sols.push_back(covering_json(c));
        std::cout << json{{"status", to_string(out.status)},
                          {"solutions", sols},
                          {"nodes", out.stats.nodes},
                          {"backtracks", out.stats.backtracks},
                          {"forced", out.stats.forced}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << to_string(out.status) << "\n";
        std::cout << "solutions " << out.solutions.size() << "  nodes " << out.stats.nodes
                  << "  backtracks " << out.stats.backtracks << "  forced " << out.stats.forced
                  << "\n";
        if (render_as == "svg") {
          std::cout << render_svg(out.solutions);
        } else {
          for (const Covering& c : out.solutions) std::cout << render_ascii(c);
        }
      }
      return out.status == SolveOutcome::Status::Unsatisfiable ? kNegative : kOk;
    }

    if (*count_cmd) {
      const CountResult f = count_square_coverings(n, m);
      std::optional<CountResult> e;
      if (oracle) e = count_by_enumeration(Region::rectangle(n, n), m, jobs);
      if (as_json) {
        json j = {{"n", n}, {"m", m}, {"count", f.count}, {"method", to_string(f.method)}};
        if (e) j["enumerated"] = e->count;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << f.count << "\n";
        if (e) std::cout << "enumerated " << e->count << (e->count == f.count ? " (agrees)" : " (DIFFERS)") << "\n";
      }
      return e && e->count != f.count ? kNegative : kOk;
    }

    if (*enum_cmd) {
      EnumConstraints ec;
      ec.monomino_count = monos;
      ec.vertical_domino_count = verticals;
      ec.horizontal_domino_count = horizontals;
      const Region region = Region::rectangle(rows, cols);
      if (region.area() > kMaxEnumerationArea) throw Usage("region too large to enumerate");
      std::vector<Covering> all = enumerate_coverings(region, ec);
      fs::create_directories(out_dir);
      std::ofstream txt(fs::path(out_dir) / "coverings.txt");
      for (const Covering& c : all) txt << render_ascii(c) << "\n";
      std::ofstream(fs::path(out_dir) / "gallery.svg") << render_svg(all);
      if (as_json)
        std::cout << json{{"count", all.size()}, {"out", out_dir}}.dump(2) << "\n";
      else
        std::cout << all.size() << "\n";
      return kOk;
    }

    if (*gen_cmd) {
      PuzzleDocument doc = generate_tomoku(grows, gcols, seed,
                                           no_backtrack ? Difficulty::NoBacktrack : Difficulty::Any);
      const std::string text = render_puzzle(doc);
      if (!gen_out.empty()) std::ofstream(gen_out) << text;
      if (as_json)
        std::cout << json{{"id", doc.spec.id}, {"document", text}}.dump(2) << "\n";
      else if (gen_out.empty())
        std::cout << text;
      return kOk;
    }

    if (*noku_cmd) {
      const Region region = Region::rectangle(nrows, ncols);
      TreeOptions topt;
      topt.jobs = jobs;
      if (calibrate_target) {
        const Calibration cal = calibrate_ruleset(region, *calibrate_target, topt);
        if (as_json) {
          json table = json::array();
          for (const auto& row : cal.table)
            table.push_back({{"kinds", row.ruleset.kinds_string()},
                             {"root_counted", row.ruleset.count_root},
                             {"nodes", row.nodes}});
          json j = {{"target", *calibrate_target}, {"table", table}};
          j["match"] = cal.match ? json{{"kinds", cal.match->kinds_string()},
                                        {"root_counted", cal.match->count_root}}
                                 : json(nullptr);
          std::cout << j.dump(2) << "\n";
        } else {
          for (const auto& row : cal.table)
            std::cout << row.ruleset.kinds_string() << (row.ruleset.count_root ? " root " : " no-root ")
                      << row.nodes << "\n";
          if (cal.match)
            std::cout << "match " << cal.match->kinds_string()
                      << (cal.match->count_root ? " root" : " no-root") << "\n";
          else
            std::cout << "NoMatch\n";
        }
        return cal.match ? kOk : kNegative;
      }
      Ruleset rules = ruleset_from(kinds);
      rules.count_root = !exclude_root;
      const GameVerdict v = solve_noku(region, rules);
      std::optional<std::uint64_t> nodes;
      if (census) nodes = game_tree_stats(region, rules, topt);
      if (as_json) {
        json j = {{"rows", nrows}, {"cols", ncols}, {"kinds", rules.kinds_string()},
                  {"winner", player_number(v.winner)}};
        j["best_move"] = v.best_move ? json{{"kind", to_string(v.best_move->kind)},
                                            {"row", v.best_move->anchor.row},
                                            {"col", v.best_move->anchor.col}}
                                     : json(nullptr);
        if (nodes) j["nodes"] = *nodes;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "winner: player " << player_number(v.winner) << "\n";
        if (v.best_move)
          std::cout << "first move: " << to_string(v.best_move->kind) << " "
                    << v.best_move->anchor.row << " " << v.best_move->anchor.col << "\n";
        if (nodes) std::cout << "nodes: " << *nodes << "\n";
      }
      return kOk;
    }

    if (*render_cmd) {
      PuzzleDocument doc = load_puzzle(resolve_puzzle(render_file));
      if (render_fmt == "doc") {
        std::cout << render_puzzle(doc);
        return kOk;
      }
      Covering c = doc.solution ? *doc.solution
                   : doc.spec.mode == Mode::Noku ? Covering(doc.spec.region)
                                                 : initial_covering(doc.spec);
      if (as_json) {
        std::cout << json{{"ascii", render_ascii(c)}, {"tiles", covering_json(c)}}.dump(2) << "\n";
      } else {
        std::cout << (render_fmt == "svg" ? render_svg(c) : render_ascii(c));
      }
      return kOk;
    }

    if (*serve_cmd) {
      if (puzzle_dir.empty())
        if (const char* dir = std::getenv(kPuzzleDirVar)) puzzle_dir = dir;
      std::map<std::string, PuzzleDocument> library;
      if (!puzzle_dir.empty()) library = load_library(puzzle_dir);
      service::Service svc(std::move(library),
                           log_dir.empty() ? std::nullopt : std::optional<fs::path>(log_dir));
      httplib::Server server;
      service::bind(server, svc);
      std::cerr << "listening on " << host << ":" << port << " with " << svc.library().size()
                << " puzzles\n";
      if (!server.listen(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << "\n";
        return kUsage;
      }
      return kOk;
    }
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
