#include <catch_amalgamated.hpp>

#include <thread>

#include "tatami/http.hpp"

using namespace tatami;
using nlohmann::json;

namespace {

struct LiveServer {
  service::Service svc{load_library(TATAMI_PUZZLE_DIR)};
  httplib::Server server;
  std::thread worker;
  int port = 0;

  LiveServer() {
    service::bind(server, svc);
    port = server.bind_to_any_port("127.0.0.1");
    worker = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~LiveServer() {
    server.stop();
    worker.join();
  }
};

}  // namespace

TEST_CASE("contract over a live socket", "[http]") {
  LiveServer live;
  httplib::Client cli("127.0.0.1", live.port);

  auto list = cli.Get("/puzzles");
  REQUIRE(list);
  CHECK(list->status == 200);
  CHECK(list->get_header_value("Content-Type") == "application/json");
  CHECK(json::parse(list->body).at("puzzles").size() >= 12);

  auto created = cli.Post("/sessions", json{{"puzzle_id", "blocked-oku"}}.dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string sid = json::parse(created->body).at("session_id");

  auto state = cli.Get("/sessions/" + sid);
  REQUIRE(state);
  CHECK(json::parse(state->body).at("mode") == "oku");

  auto placed = cli.Post("/sessions/" + sid + "/place",
                         json{{"kind", "H"}, {"row", 7}, {"col", 0}}.dump(), "application/json");
  REQUIRE(placed);
  CHECK(placed->status == 200);
  CHECK(json::parse(placed->body).at("verdict").contains("kind"));

  auto hint = cli.Get("/sessions/" + sid + "/hint");
  REQUIRE(hint);
  CHECK(hint->status == 200);

  auto missing = cli.Get("/sessions/nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body).at("error").at("code") == "SessionNotFound");

  auto bad = cli.Post("/sessions/" + sid + "/remove", "{\"tile_id\":\"x\"}", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  auto wrong = cli.Post("/sessions/" + sid + "/noku/ai-move", "", "application/json");
  REQUIRE(wrong);
  CHECK(wrong->status == 409);

  auto noku = cli.Post("/sessions", json{{"puzzle_id", "noku-2x6"}, {"vs_ai", true}}.dump(),
                       "application/json");
  REQUIRE(noku);
  const std::string nid = json::parse(noku->body).at("session_id");
  auto reply = cli.Post("/sessions/" + nid + "/place",
                        json{{"kind", "M"}, {"row", 0}, {"col", 0}}.dump(), "application/json");
  REQUIRE(reply);
  const json body = json::parse(reply->body);
  CHECK(body.at("ai_move").at("by_ai") == true);
  CHECK(body.at("state").at("move_count") == 2);

  auto pre = cli.Options("/sessions");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  CHECK(pre->get_header_value("Access-Control-Allow-Origin") == "*");
}
