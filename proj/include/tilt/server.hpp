#pragma once

// Session-oriented JSON service for the interactive explorer, and its HTTP
// binding under /api/v1/.
//
// ExplorerService is transport-free: every call takes and returns JSON with an
// HTTP status, so it can be exercised without sockets.

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "tilt/errors.hpp"
#include "tilt/exchange_graph.hpp"
#include "tilt/rigid_set.hpp"
#include "tilt/seeds.hpp"

namespace tilt::server {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Response {
  int status = 200;
  json body;
};

inline Response error_response(int status, const std::string& message, const std::string& reason = "") {
  json body{{"error", message}};
  if (!reason.empty()) body["reason"] = reason;
  return {status, body};
}

/// Positive off-diagonal entries of B as arrows between summand positions.
inline json quiver_json(const ExchangeMatrix& b) {
  json arrows = json::array();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[i][j] > 0) arrows.push_back({{"from", i}, {"to", j}, {"multiplicity", b[i][j]}});
  return arrows;
}

template <ExchangeBackend B>
struct SessionState {
  using Object = typename B::object_type;
  struct Step {
    RigidSet<Object> set;
    ExchangeMatrix matrix;
    std::size_t index;
  };

  B backend;
  SearchWindow window;
  RigidSet<Object> initial;
  ExchangeMatrix initial_matrix;
  RigidSet<Object> current;
  ExchangeMatrix matrix;
  std::vector<Step> history;

  json backend_json() const {
    if constexpr (std::is_same_v<B, CohBackend>)
      return {{"kind", "coh"}, {"weights", backend.name()}};
    else
      return {{"kind", "dynkin"}, {"quiver", backend.name()}};
  }

  json state_json() const {
    json elems = json::array();
    for (const auto& o : current) elems.push_back(o.to_string());
    return {{"backend", backend_json()}, {"elements", elems},          {"key", current.key()},
            {"matrix", matrix},          {"arrows", quiver_json(matrix)}, {"history_length", history.size()}};
  }

  /// Mutation at `index`; the matrix follows by FZ mutation relabeled to the new order.
  json mutate(std::size_t index) {
    if (index >= current.size()) throw parse_error("index out of range");
    auto m = tilt::mutate(backend, current, index, window);
    auto carried = tilt::detail::carry(current, matrix, m.result, m.out, m.in);
    if (!carried) throw internal_error("matrix relabeling failed");
    history.push_back({current, matrix, index});
    current = std::move(m.result);
    matrix = std::move(*carried);
    json out = state_json();
    out["exchanged"] = {{"out", m.out.to_string()}, {"in", m.in.to_string()}, {"index", index}, {"new_index", m.new_index}};
    return out;
  }

  /// Mutation indices from the initial state, and whether replaying them
  /// reproduces the current set and matrix.
  json history_json() const {
    json steps = json::array();
    RigidSet<Object> set = initial;
    ExchangeMatrix b = initial_matrix;
    for (const auto& step : history) {
      steps.push_back({{"index", step.index}, {"key", step.set.key()}});
      auto m = tilt::mutate(backend, set, step.index, window);
      b = *tilt::detail::carry(set, b, m.result, m.out, m.in);
      set = std::move(m.result);
    }
    return {{"initial", initial.key()}, {"steps", steps}, {"replay_consistent", set == current && b == matrix}};
  }

  bool undo() {
    if (history.empty()) return false;
    current = std::move(history.back().set);
    matrix = std::move(history.back().matrix);
    history.pop_back();
    return true;
  }

  json neighborhood(std::size_t depth) const {
    auto g = explore(backend, current, ExploreLimits::depth(depth), window);
    json j = to_json(g);
    j["current"] = current.key();
    return j;
  }

  json reach(const std::string& from, const std::string& to) const {
    const Object m = backend.parse(from), n = backend.parse(to);
    auto cert = tilt::reach(backend, m, n, window);
    json chain = json::array(), edges = json::array();
    for (const auto& o : cert.chain) chain.push_back(o.to_string());
    for (std::size_t i = 0; i + 1 < cert.chain.size(); ++i)
      edges.push_back({{"a", cert.chain[i].to_string()},
                       {"b", cert.chain[i + 1].to_string()},
                       {"ext1_ab", backend.ext1(cert.chain[i], cert.chain[i + 1])},
                       {"ext1_ba", backend.ext1(cert.chain[i + 1], cert.chain[i])}});
    return {{"chain", chain}, {"edges", edges}, {"verified", verify_certificate(backend, cert)}};
  }

  std::string export_graph(const std::string& format, std::size_t depth) const {
    auto g = explore(backend, current, ExploreLimits::depth(depth), window);
    if (format == "dot") return to_dot(g);
    if (format == "json") return to_json(g).dump(2);
    throw parse_error("unknown export format '" + format + "'");
  }
};

template <ExchangeBackend B>
SessionState<B> make_state(B backend, std::optional<RigidSet<typename B::object_type>> start, SearchWindow window) {
  auto canonical = canonical_tilting(backend);
  ExchangeMatrix b0 = initial_matrix(backend);
  RigidSet<typename B::object_type> initial = canonical;
  ExchangeMatrix m0 = b0;
  if (start && !(*start == canonical)) {
    // Carry the canonical matrix along a mutation path to the requested start.
    auto path = find_path(backend, canonical, *start, window);
    for (const auto& step : path) {
      auto m = mutate(backend, initial, *initial.index_of(step.out), window);
      m0 = *tilt::detail::carry(initial, m0, m.result, m.out, m.in);
      initial = std::move(m.result);
    }
  }
  return SessionState<B>{std::move(backend), window, initial, m0, initial, m0, {}};
}

struct Session {
  using State = std::variant<SessionState<CohBackend>, SessionState<DynkinBackend>>;
  explicit Session(State s) : last_used(Clock::now()), state(std::move(s)) {}

  std::mutex mutex;
  Clock::time_point last_used;
  State state;
};

struct ServiceOptions {
  std::chrono::seconds idle_timeout{30 * 60};
  std::size_t max_depth = 8;
};

class ExplorerService {
 public:
  explicit ExplorerService(ServiceOptions opts = {}) : opts_(opts) {}

  /// Body: {"weights": "(2,3)"} or {"quiver": "A3"}; optional "elements"
  /// (a tilting set, default canonical) and "window": [lo, hi].
  Response create_session(const json& body) {
    return guard([&]() -> Response {
      if (!body.is_object()) throw parse_error("request body must be a JSON object");
      SearchWindow window = SearchWindow::automatic();
      if (body.contains("window")) {
        const auto& w = body.at("window");
        if (!w.is_array() || w.size() != 2) throw parse_error("window must be [lo, hi]");
        window = SearchWindow::range(w[0].get<std::int64_t>(), w[1].get<std::int64_t>());
        if (*window.lo > *window.hi) throw parse_error("window lower bound exceeds upper bound");
      }
      const bool coh = body.contains("weights"), dyn = body.contains("quiver");
      if (coh == dyn) throw parse_error("specify exactly one of 'weights' and 'quiver'");
      auto session = coh ? std::make_shared<Session>(build(CohBackend(WeightType::parse(body.at("weights").get<std::string>())), body, window))
                         : std::make_shared<Session>(build(DynkinBackend(AcyclicQuiver::parse(body.at("quiver").get<std::string>())), body, window));
      std::string id;
      {
        std::lock_guard lock(mutex_);
        id = "s" + std::to_string(++counter_);
        sessions_.emplace(id, session);
      }
      json out = std::visit([](const auto& st) { return st.state_json(); }, session->state);
      out["id"] = id;
      return {201, out};
    });
  }

  Response get_state(const std::string& id) {
    return with_session(id, [&](auto& st) { return Response{200, st.state_json()}; });
  }

  Response mutate(const std::string& id, const json& body) {
    return with_session(id, [&](auto& st) {
      if (!body.is_object() || !body.contains("index") || !body.at("index").is_number_integer())
        throw parse_error("body must be {\"index\": <integer>}");
      const auto index = body.at("index").get<std::int64_t>();
      if (index < 0) throw parse_error("index out of range");
      return Response{200, st.mutate(static_cast<std::size_t>(index))};
    });
  }

  Response undo(const std::string& id) {
    return with_session(id, [&](auto& st) {
      if (!st.undo()) return error_response(409, "nothing to undo", "empty-history");
      return Response{200, st.state_json()};
    });
  }

  Response history(const std::string& id) {
    return with_session(id, [&](auto& st) { return Response{200, st.history_json()}; });
  }

  Response neighborhood(const std::string& id, std::size_t depth) {
    if (depth > opts_.max_depth) return error_response(400, "depth exceeds " + std::to_string(opts_.max_depth));
    return with_session(id, [&](auto& st) { return Response{200, st.neighborhood(depth)}; });
  }

  Response reach(const std::string& id, const json& body) {
    return with_session(id, [&](auto& st) {
      if (!body.is_object() || !body.contains("from") || !body.contains("to"))
        throw parse_error("body must be {\"from\": <object>, \"to\": <object>}");
      return Response{200, st.reach(body.at("from").get<std::string>(), body.at("to").get<std::string>())};
    });
  }

  /// Body is {"format": ..., "content": <string>}.
  Response export_graph(const std::string& id, const std::string& format, std::size_t depth) {
    if (depth > opts_.max_depth) return error_response(400, "depth exceeds " + std::to_string(opts_.max_depth));
    return with_session(id, [&](auto& st) {
      return Response{200, json{{"format", format}, {"content", st.export_graph(format, depth)}}};
    });
  }

  Response remove(const std::string& id) {
    std::lock_guard lock(mutex_);
    if (!sessions_.erase(id)) return error_response(404, "unknown session '" + id + "'");
    return {200, json{{"deleted", id}}};
  }

  /// Drops sessions idle since before now - idle_timeout; returns how many.
  std::size_t evict_idle(Clock::time_point now = Clock::now()) {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      bool idle;
      {
        std::lock_guard slock(it->second->mutex);
        idle = now - it->second->last_used > opts_.idle_timeout;
      }
      if (idle) {
        it = sessions_.erase(it);
        ++n;
      } else {
        ++it;
      }
    }
    return n;
  }

  std::size_t session_count() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

 private:
  template <ExchangeBackend B>
  static SessionState<B> build(B backend, const json& body, SearchWindow window) {
    std::optional<RigidSet<typename B::object_type>> start;
    if (body.contains("elements")) {
      std::vector<typename B::object_type> elems;
      for (const auto& e : body.at("elements")) elems.push_back(backend.parse(e.get<std::string>()));
      start = RigidSet<typename B::object_type>(std::move(elems));
      if (!is_tilting(backend, *start)) throw not_tilting("elements are not a tilting set: " + start->key());
    }
    return make_state(std::move(backend), std::move(start), window);
  }

  template <class F>
  static Response guard(F&& f) {
    try {
      return f();
    } catch (const complement_not_in_window& e) {
      return error_response(409, e.what(), e.reason());
    } catch (const not_tilting& e) {
      return error_response(409, e.what(), "not-tilting");
    } catch (const not_rigid& e) {
      return error_response(409, e.what(), "not-rigid");
    } catch (const not_found_within_budget& e) {
      return error_response(409, e.what(), "budget");
    } catch (const parse_error& e) {
      return error_response(400, e.what());
    } catch (const mismatch_error& e) {
      return error_response(400, e.what());
    } catch (const domain_error& e) {
      return error_response(400, e.what());
    } catch (const json::exception& e) {
      return error_response(400, std::string("bad JSON: ") + e.what());
    } catch (const std::exception& e) {
      return error_response(500, e.what());
    }
  }

  template <class F>
  Response with_session(const std::string& id, F&& f) {
    std::shared_ptr<Session> s;
    {
      std::lock_guard lock(mutex_);
      auto it = sessions_.find(id);
      if (it == sessions_.end()) return error_response(404, "unknown session '" + id + "'");
      s = it->second;
    }
    std::lock_guard slock(s->mutex);
    s->last_used = Clock::now();
    return guard([&] { return std::visit([&](auto& st) { return f(st); }, s->state); });
  }

  ServiceOptions opts_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

inline void send(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

inline json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body, nullptr, /*allow_exceptions=*/false);
}

inline std::size_t depth_param(const httplib::Request& req, std::size_t fallback) {
  if (!req.has_param("depth")) return fallback;
  const std::string v = req.get_param_value("depth");
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 3)
    throw parse_error("depth must be a small non-negative integer");
  return static_cast<std::size_t>(std::stoul(v));
}

/// Registers /api/v1/ routes with permissive CORS for a local UI.
inline void bind(httplib::Server& srv, ExplorerService& svc, const std::string& cors_origin = "*") {
  srv.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                           {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  srv.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.set_pre_routing_handler([&svc](const httplib::Request&, httplib::Response&) {
    svc.evict_idle();
    return httplib::Server::HandlerResponse::Unhandled;
  });

  auto with_body = [](const httplib::Request& req, httplib::Response& res, auto&& f) {
    json body = parse_body(req);
    if (body.is_discarded()) return send(res, error_response(400, "request body is not valid JSON"));
    send(res, f(body));
  };

  srv.Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) { send(res, {200, json{{"status", "ok"}}}); });
  srv.Post("/api/v1/sessions", [&svc, with_body](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const json& b) { return svc.create_session(b); });
  });
  srv.Get(R"(/api/v1/sessions/([^/]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.get_state(req.matches[1]));
  });
  srv.Delete(R"(/api/v1/sessions/([^/]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.remove(req.matches[1]));
  });
  srv.Post(R"(/api/v1/sessions/([^/]+)/mutate)", [&svc, with_body](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const json& b) { return svc.mutate(req.matches[1], b); });
  });
  srv.Post(R"(/api/v1/sessions/([^/]+)/undo)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.undo(req.matches[1]));
  });
  srv.Get(R"(/api/v1/sessions/([^/]+)/history)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.history(req.matches[1]));
  });
  srv.Get(R"(/api/v1/sessions/([^/]+)/neighborhood)", [&svc](const httplib::Request& req, httplib::Response& res) {
    try {
      send(res, svc.neighborhood(req.matches[1], depth_param(req, 1)));
    } catch (const parse_error& e) {
      send(res, error_response(400, e.what()));
    }
  });
  srv.Post(R"(/api/v1/sessions/([^/]+)/reach)", [&svc, with_body](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const json& b) { return svc.reach(req.matches[1], b); });
  });
  srv.Get(R"(/api/v1/sessions/([^/]+)/export)", [&svc](const httplib::Request& req, httplib::Response& res) {
    try {
      const std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
      send(res, svc.export_graph(req.matches[1], format, depth_param(req, 2)));
    } catch (const parse_error& e) {
      send(res, error_response(400, e.what()));
    }
  });
}

}  // namespace tilt::server
