#include "dialog/service.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dialog/enumerate.hpp"
#include "dialog/mine.hpp"
#include "dialog/parse.hpp"
#include "dialog/rewrite.hpp"

namespace dialog {

using nlohmann::json;

namespace {

constexpr std::size_t kStatelessQuestionLimit = 8;
constexpr const char* kDefaultAction = "complete";

HttpResponse reply(int status, const json& body) { return {status, body.dump()}; }

HttpResponse error_reply(int status, const std::string& message) {
  return reply(status, json{{"error", message}});
}

HttpResponse dialog_error_reply(const DialogError& e) {
  json body{{"error", e.what()}, {"kind", std::string(to_string(e.kind()))}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    body["position"] = {{"offset", pe->offset()}, {"line", pe->line()}, {"column", pe->column()}};
  }
  return reply(400, body);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : path) {
    if (c == '?') break;
    if (c == '/') {
      if (!current.empty()) parts.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

// Accepts domain-file text or a {question: [values]} object; stores file text.
std::string domains_text_of(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (!value.is_object()) throw DialogError(ErrorKind::invalid_argument, "domains must be text or an object");
  std::string out;
  for (const auto& [q, values] : value.items()) {
    if (!values.is_array()) throw DialogError(ErrorKind::invalid_argument, "domain of '" + q + "' must be a list");
    out += "(domain " + q + " (";
    bool first = true;
    for (const auto& v : values) {
      if (!v.is_string()) throw DialogError(ErrorKind::invalid_argument, "domain values must be strings");
      if (!first) out += ' ';
      out += v.get<std::string>();
      first = false;
    }
    out += "))\n";
  }
  return out;
}

std::shared_ptr<const StagerPlan> build_plan(const std::string& spec_text,
                                             const std::string& domains_text,
                                             const std::string& action) {
  return std::make_shared<const StagerPlan>(
      compile_stager(parse_spec(spec_text), parse_domains(domains_text), action));
}

json utterance_json(const AbstractUtterance& u) { return json(std::vector<std::string>(u.begin(), u.end())); }

json askable_json(const SessionState& s) {
  const auto qs = askable(s);
  return json(std::vector<std::string>(qs.begin(), qs.end()));
}

json state_json(const std::string& id, const std::string& created_at, const SessionState& s) {
  json history = json::array();
  for (const auto& u : s.history()) history.push_back(utterance_json(u));
  json turns = json::array();
  for (const auto& t : s.turns()) turns.push_back(json(t));
  json domains = json::object();
  for (const auto& [q, d] : s.plan().domains()) domains[q] = d.allowed;

  json out{{"id", id},
           {"created_at", created_at},
           {"askable", askable_json(s)},
           {"history", std::move(history)},
           {"turns", std::move(turns)},
           {"completed", s.completed()},
           {"domains", std::move(domains)},
           {"undo_depth", s.undo_depth()},
           {"redo_depth", s.redo_depth()}};
  if (s.completed()) {
    out["completion"] = {{"action", s.completion()->action}, {"bindings", s.completion()->bindings}};
    out["residual_spec"] = "";
  } else {
    out["residual_spec"] = render_spec(residual_union(s.plan().spec(), s.history()));
  }
  return out;
}

std::optional<Bindings> bindings_of(const json& value) {
  if (!value.is_object()) return std::nullopt;
  Bindings b;
  for (const auto& [q, v] : value.items()) {
    if (!v.is_string()) return std::nullopt;
    b.emplace(q, v.get<std::string>());
  }
  return b;
}

}  // namespace

SessionService::SessionService(std::optional<std::filesystem::path> state_dir)
    : state_dir_(std::move(state_dir)) {
  if (state_dir_) {
    std::filesystem::create_directories(*state_dir_);
    restore();
  }
}

std::size_t SessionService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::size_t SessionService::quarantined_count() const {
  std::shared_lock lock(sessions_mutex_);
  return static_cast<std::size_t>(std::count_if(sessions_.begin(), sessions_.end(), [](const auto& kv) {
    return !kv.second->state.has_value();
  }));
}

std::string SessionService::new_id() {
  std::lock_guard lock(id_mutex_);
  static std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex;
  for (int i = 0; i < 2; ++i) {
    const auto word = rng();
    for (int shift = 60; shift >= 0; shift -= 4) out << ((word >> shift) & 0xf);
  }
  return out.str();
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void SessionService::append(const std::string& id, const std::string& line) const {
  if (!state_dir_) return;
  std::ofstream out(*state_dir_ / (id + ".log"), std::ios::app | std::ios::binary);
  out << line << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot write session log for " + id);
}

void SessionService::restore() {
  std::vector<std::filesystem::path> logs;
  for (const auto& entry : std::filesystem::directory_iterator(*state_dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".log") logs.push_back(entry.path());
  }
  std::sort(logs.begin(), logs.end());
  for (const auto& path : logs) {
    auto session = std::make_shared<Session>();
    const std::string id = path.stem().string();
    try {
      std::ifstream in(path, std::ios::binary);
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        const auto event = json::parse(line);
        const auto kind = event.at("event").get<std::string>();
        if (lineno == 1) {
          if (kind != "created") throw std::runtime_error("log does not start with a created event");
          session->spec_text = event.at("spec").get<std::string>();
          session->domains_text = event.at("domains").get<std::string>();
          session->action = event.at("action").get<std::string>();
          session->created_at = event.at("created_at").get<std::string>();
          session->state = start_session(build_plan(session->spec_text, session->domains_text, session->action));
          continue;
        }
        if (kind == "utterance") {
          const auto b = bindings_of(event.at("bindings"));
          if (!b) throw std::runtime_error("bad bindings at line " + std::to_string(lineno));
          auto [next, result] = step(*session->state, *b);
          if (result.outcome == Outcome::rejected)
            throw std::runtime_error("replayed utterance rejected at line " + std::to_string(lineno));
          session->state = std::move(next);
        } else if (kind == "undo" || kind == "redo") {
          auto next = kind == "undo" ? undo(*session->state) : redo(*session->state);
          if (!next) throw std::runtime_error("replayed " + kind + " on empty stack");
          session->state = std::move(*next);
        } else {
          throw std::runtime_error("unknown event '" + kind + "'");
        }
      }
      if (lineno == 0) throw std::runtime_error("empty log");
    } catch (const std::exception& e) {
      session->state.reset();
      session->quarantine_reason = e.what();
    }
    sessions_.emplace(id, std::move(session));
  }
}

HttpResponse SessionService::handle(const std::string& method, const std::string& path,
                                    const std::string& body) {
  const auto parts = split_path(path);
  if (parts.size() < 2 || parts[0] != "v1") return error_reply(404, "not found");
  try {
    if (parts.size() == 2) {
      const auto& what = parts[1];
      if (what == "healthz") {
        if (method != "GET") return error_reply(405, "method not allowed");
        return reply(200, json{{"status", "ok"}, {"sessions", session_count()}, {"quarantined", quarantined_count()}});
      }
      if (method != "POST") return error_reply(405, "method not allowed");
      if (what == "sessions") return create(body);
      if (what == "mine") return mine_endpoint(body);
      if (what == "enumerate") return enumerate_endpoint(body);
      return error_reply(404, "not found");
    }
    if (parts[1] != "sessions") return error_reply(404, "not found");
    const auto& id = parts[2];
    if (parts.size() == 3) {
      if (method != "GET") return error_reply(405, "method not allowed");
      return get(id);
    }
    if (parts.size() == 4) {
      if (method != "POST") return error_reply(405, "method not allowed");
      if (parts[3] == "utterance") return utterance(id, body);
      if (parts[3] == "undo") return undo_redo(id, true);
      if (parts[3] == "redo") return undo_redo(id, false);
    }
    return error_reply(404, "not found");
  } catch (const json::exception& e) {
    return error_reply(400, std::string("malformed JSON: ") + e.what());
  } catch (const DialogError& e) {
    return dialog_error_reply(e);
  } catch (const std::exception& e) {
    return error_reply(500, e.what());
  }
}

HttpResponse SessionService::create(const std::string& body) {
  const auto request = json::parse(body);
  if (!request.is_object() || !request.contains("spec") || !request.contains("domains"))
    return error_reply(400, "expected {spec, domains}");
  auto session = std::make_shared<Session>();
  session->spec_text = request.at("spec").get<std::string>();
  session->domains_text = domains_text_of(request.at("domains"));
  session->action = request.value("action", std::string(kDefaultAction));
  session->created_at = utc_now();
  session->state = start_session(build_plan(session->spec_text, session->domains_text, session->action));

  const auto id = new_id();
  append(id, json{{"event", "created"},
                  {"spec", session->spec_text},
                  {"domains", session->domains_text},
                  {"action", session->action},
                  {"created_at", session->created_at}}
                 .dump());
  auto response = state_json(id, session->created_at, *session->state);
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_.emplace(id, std::move(session));
  }
  return reply(201, response);
}

HttpResponse SessionService::get(const std::string& id) {
  auto session = find(id);
  if (!session) return error_reply(404, "unknown session");
  std::lock_guard lock(session->mutex);
  if (!session->state) return error_reply(410, "session quarantined: " + session->quarantine_reason);
  return reply(200, state_json(id, session->created_at, *session->state));
}

HttpResponse SessionService::utterance(const std::string& id, const std::string& body) {
  auto session = find(id);
  if (!session) return error_reply(404, "unknown session");
  const auto request = json::parse(body);
  if (!request.is_object() || !request.contains("bindings")) return error_reply(400, "expected {bindings}");
  const auto bindings = bindings_of(request.at("bindings"));
  if (!bindings) return error_reply(400, "bindings must map questions to strings");

  std::lock_guard lock(session->mutex);
  if (!session->state) return error_reply(410, "session quarantined: " + session->quarantine_reason);
  if (session->state->completed()) return error_reply(409, "session completed");
  auto [next, result] = step(*session->state, *bindings);
  if (result.outcome == Outcome::rejected) {
    return reply(200, json{{"outcome", "rejected"},
                           {"reason", std::string(to_string(*result.reason))},
                           {"askable", askable_json(*session->state)}});
  }
  append(id, json{{"event", "utterance"}, {"bindings", *bindings}}.dump());
  session->state = std::move(next);
  auto response = state_json(id, session->created_at, *session->state);
  response["outcome"] = std::string(to_string(result.outcome));
  return reply(200, response);
}

HttpResponse SessionService::undo_redo(const std::string& id, bool is_undo) {
  auto session = find(id);
  if (!session) return error_reply(404, "unknown session");
  std::lock_guard lock(session->mutex);
  if (!session->state) return error_reply(410, "session quarantined: " + session->quarantine_reason);
  auto next = is_undo ? undo(*session->state) : redo(*session->state);
  if (!next) return error_reply(409, is_undo ? "nothing to undo" : "nothing to redo");
  append(id, json{{"event", is_undo ? "undo" : "redo"}}.dump());
  session->state = std::move(*next);
  return reply(200, state_json(id, session->created_at, *session->state));
}

HttpResponse SessionService::mine_endpoint(const std::string& body) {
  const auto request = json::parse(body);
  if (!request.is_object() || !request.contains("episodes")) return error_reply(400, "expected {episodes}");
  const auto spec = parse_episodes(request.at("episodes").get<std::string>());
  if (spec.questions.size() > kStatelessQuestionLimit)
    return error_reply(422, "mining is limited to 8 questions");
  const auto result = mine(spec);
  return reply(200, json{{"spec_text", render_spec(result.spec)},
                         {"minimal", known_minimal(spec, result)}});
}

HttpResponse SessionService::enumerate_endpoint(const std::string& body) {
  const auto request = json::parse(body);
  if (!request.is_object() || !request.contains("spec_text")) return error_reply(400, "expected {spec_text}");
  const auto spec = parse_spec(request.at("spec_text").get<std::string>());
  if (spec.questions().size() > kStatelessQuestionLimit)
    return error_reply(422, "enumeration is limited to 8 questions");
  const auto en = enumerate_union(spec);
  json episodes = json::array();
  for (const auto& ep : canonical_order(en.episodes)) episodes.push_back(render_episode(ep));
  return reply(200, json{{"episodes", std::move(episodes)}, {"count", en.episodes.size()}});
}

}  // namespace dialog
