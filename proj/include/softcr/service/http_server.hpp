#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace softcr::service {

class TeleopService;

/// Raised when the listening socket cannot be set up (port in use, bad host).
class ServiceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HttpServerOptions {
  std::string host = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks an ephemeral port
  std::optional<std::filesystem::path> static_dir;
  int threads = 1;
};

/// Hosts the teleoperation endpoints:
///   GET /state    current TeleopState as JSON
///   GET /config   SimConfig as JSON
///   WS  /teleop   input messages in, one state frame per tick out
///   GET /*        files below static_dir (index.html for "/")
class HttpServer {
 public:
  HttpServer(TeleopService& service, HttpServerOptions options);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port actually bound; differs from options.port when that was 0.
  unsigned short port() const;

  /// Serves on background threads until stop().
  void start();
  /// Serves on the calling thread until stop() is called elsewhere.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace softcr::service
