#include <httplib.h>

#include "dialog/service.hpp"

namespace dialog {

int serve_http(SessionService& service, const std::string& host, int port) {
  httplib::Server server;
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto out = service.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace dialog
