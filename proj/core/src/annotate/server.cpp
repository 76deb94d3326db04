#include "reldim/annotate/server.hpp"

#include <atomic>
#include <thread>

#include <httplib.h>

#include <json.hpp>

#include "reldim/error.hpp"

namespace reldim::annotate {

using nlohmann::json;

std::string_view prompt(Dimension d) {
  switch (d) {
    case Dimension::similarity: return "You share interests, background or outlook.";
    case Dimension::social_support: return "You give each other emotional or practical help.";
    case Dimension::trust: return "You rely on each other and would share a secret.";
    case Dimension::power: return "One of you has authority or control over the other.";
    case Dimension::knowledge: return "You exchange information, ideas or advice.";
    case Dimension::identity: return "You belong to the same group or community.";
    case Dimension::respect: return "You admire or look up to each other.";
    case Dimension::romance: return "There is romantic or sexual attraction.";
    case Dimension::fun: return "You spend time together for enjoyment and laughs.";
    case Dimension::conflict: return "You argue, compete or clash.";
  }
  return "";
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& msg) {
  send_json(res, status, {{"error", msg}});
}

json parse_body(const httplib::Request& req) {
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) throw ValidationError("request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("request body is not valid JSON: ") + e.what());
  }
}

json session_json(const Session& s) {
  return {{"session", s.id},   {"participant", s.participant}, {"queue", s.queue},
          {"cursor", s.cursor}, {"remaining", s.remaining()},   {"created", s.created}};
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    send_error(res, 400, e.what());
  } catch (const NotFoundError& e) {
    send_error(res, 404, e.what());
  } catch (const ConflictError& e) {
    send_error(res, 409, e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

struct Server::Impl {
  AnnotationStore& store;
  httplib::Server http;
  // httplib ignores stop() until listen is running, so a stop that races
  // the start has to wait for it.
  std::atomic<bool> started{false};
  std::atomic<bool> finished{false};
  std::atomic<bool> stop_requested{false};
  explicit Impl(AnnotationStore& s) : store(s) {}
};

Server::Server(AnnotationStore& store) : impl_(std::make_unique<Impl>(store)) {
  auto& http = impl_->http;
  auto& st = impl_->store;

  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Headers", "Content-Type"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  http.Post("/sessions", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.contains("participant") || !body["participant"].is_string()) {
        throw ValidationError("'participant' must be a string");
      }
      if (!body.contains("friends") || !body["friends"].is_array()) {
        throw ValidationError("'friends' must be an array of strings");
      }
      std::vector<std::string> friends;
      for (const auto& f : body["friends"]) {
        if (!f.is_string()) throw ValidationError("'friends' must be an array of strings");
        friends.push_back(f.get<std::string>());
      }
      CreatedSession c = st.create_session(body["participant"].get<std::string>(), friends);
      json out = session_json(c.session);
      out["warnings"] = c.warnings;
      send_json(res, 201, out);
    });
  });

  http.Get(R"(/sessions/([^/]+)/next)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const NextPair p = st.next_pair(req.matches[1]);
      json out = {{"session", std::string(req.matches[1])},
                  {"done", p.done},
                  {"position", p.position},
                  {"total", p.total}};
      if (!p.done) {
        out["friend"] = p.friend_id;
        json dims = json::array();
        for (Dimension d : kAllDimensions) {
          dims.push_back({{"dimension", std::string(to_string(d))}, {"prompt", std::string(prompt(d))}});
        }
        out["dimensions"] = std::move(dims);
      }
      send_json(res, 200, out);
    });
  });

  http.Post(R"(/sessions/([^/]+)/labels)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      st.session(id);  // 404 before body validation
      const json body = parse_body(req);
      if (!body.contains("friend") || !body["friend"].is_string()) {
        throw ValidationError("'friend' must be a string");
      }
      if (!body.contains("dimensions")) throw ValidationError("'dimensions' is required");
      const Judgments dims = parse_judgments(body["dimensions"].dump());
      const Ack ack = st.submit_label(id, body["friend"].get<std::string>(), dims);
      send_json(res, 200, {{"session", id}, {"accepted", true}, {"cursor", ack.cursor}, {"remaining", ack.remaining}});
    });
  });

  http.Get("/labels/export", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::optional<std::string> participant;
      std::optional<std::string> session;
      if (req.has_param("participant")) participant = req.get_param_value("participant");
      if (req.has_param("session")) session = req.get_param_value("session");
      std::string body;
      for (const auto& line : st.export_labels(participant, session)) {
        body += line;
        body += '\n';
      }
      res.status = 200;
      res.set_content(body, "application/x-ndjson");
    });
  });
}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->http.bind_to_any_port(host);
  } else {
    bound = impl_->http.bind_to_port(host, port) ? port : -1;
  }
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Server::listen() {
  impl_->started = true;
  bool ok = true;
  if (!impl_->stop_requested) ok = impl_->http.listen_after_bind();
  impl_->finished = true;
  if (!ok && !impl_->stop_requested) throw Error("server stopped with an error");
}

void Server::stop() {
  impl_->stop_requested = true;
  if (impl_->started) {
    while (!impl_->finished && !impl_->http.is_running()) std::this_thread::yield();
  }
  impl_->http.stop();
}

}  // namespace reldim::annotate
