#pragma once

#include <string>

#include "httplib.h"
#include "tatami/service.hpp"

namespace tatami::service {

// Routes every request under the contract paths to Service::handle.
inline void bind(httplib::Server& server, Service& svc) {
  auto forward = [&svc](const httplib::Request& req, httplib::Response& res) {
    Response r = svc.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/puzzles", forward);
  server.Post("/sessions", forward);
  server.Get(R"(/sessions/[^/]+)", forward);
  server.Get(R"(/sessions/[^/]+/hint)", forward);
  server.Post(R"(/sessions/[^/]+/(place|remove))", forward);
  server.Post(R"(/sessions/[^/]+/noku/ai-move)", forward);
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

}  // namespace tatami::service
