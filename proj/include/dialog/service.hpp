#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "dialog/stager.hpp"

namespace dialog {

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON text
};

/// The /v1 JSON API over stager sessions, independent of any transport.
///
/// With a state directory every session keeps an append-only event log
/// `<id>.log` (JSON lines: created, utterance, undo, redo). Construction
/// replays every log found there; a log that fails to parse or replay marks
/// its session quarantined (410) without affecting the others.
class SessionService {
 public:
  explicit SessionService(std::optional<std::filesystem::path> state_dir = std::nullopt);

  HttpResponse handle(const std::string& method, const std::string& path, const std::string& body);

  std::size_t session_count() const;
  std::size_t quarantined_count() const;

 private:
  struct Session {
    std::mutex mutex;
    std::string spec_text;
    std::string domains_text;
    std::string action;
    std::string created_at;
    std::optional<SessionState> state;
    std::string quarantine_reason;
  };

  HttpResponse create(const std::string& body);
  HttpResponse get(const std::string& id);
  HttpResponse utterance(const std::string& id, const std::string& body);
  HttpResponse undo_redo(const std::string& id, bool is_undo);
  HttpResponse mine_endpoint(const std::string& body);
  HttpResponse enumerate_endpoint(const std::string& body);

  std::shared_ptr<Session> find(const std::string& id) const;
  void append(const std::string& id, const std::string& line) const;
  void restore();
  std::string new_id();

  std::optional<std::filesystem::path> state_dir_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mutex_;
};

/// Serves `service` over HTTP/1.1 until the process ends. Returns non-zero if
/// the port cannot be bound.
int serve_http(SessionService& service, const std::string& host, int port);

}  // namespace dialog
