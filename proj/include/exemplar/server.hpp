#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "exemplar/library.hpp"

namespace httplib {
class Server;
}

namespace exemplar {

struct ServerOptions {
  // Registered at startup and available to POST /sessions by name.
  std::vector<std::filesystem::path> libraries;
};

/// HTTP+JSON proof session service.
class Server {
 public:
  explicit Server(const ServerOptions& options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Throws Errc::BindError. Port 0 picks a free port; returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

  std::size_t sessionCount() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace exemplar
