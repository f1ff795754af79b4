#include "softcr/service/http_server.hpp"

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "softcr/io.hpp"
#include "softcr/service/teleop_service.hpp"

namespace softcr::service {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxQueuedFrames = 256;

// Closed before the io_context goes away so the ticker thread never posts
// into a destroyed executor.
struct PostGate {
  std::mutex mutex;
  bool open = true;
};

std::string_view mime_type(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json" || ext == ".map") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  if (ext == ".wasm") return "application/wasm";
  return "application/octet-stream";
}

class WebSocketSession : public std::enable_shared_from_this<WebSocketSession> {
 public:
  WebSocketSession(tcp::socket&& socket, TeleopService& service, std::shared_ptr<PostGate> gate)
      : ws_(std::move(socket)), service_(service), gate_(std::move(gate)) {}

  ~WebSocketSession() { unsubscribe(); }

  void run(http::request<http::string_body> request) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.text(true);
    ws_.async_accept(request,
                     beast::bind_front_handler(&WebSocketSession::on_accept, shared_from_this()));
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    std::weak_ptr<WebSocketSession> weak = shared_from_this();
    auto executor = ws_.get_executor();
    subscription_ = service_.subscribe([weak, executor, gate = gate_](
                                           std::shared_ptr<const std::string> frame) {
      std::lock_guard lock(gate->mutex);
      if (!gate->open) return;
      net::post(executor, [weak, frame = std::move(frame)] {
        if (auto self = weak.lock()) self->send(frame);
      });
    });
    do_read();
  }

  void do_read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WebSocketSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      unsubscribe();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    try {
      service_.submit(parse_input_message(json::parse(text)));
    } catch (const std::exception& e) {
      send(std::make_shared<const std::string>(error_frame(e.what()).dump()));
    }
    do_read();
  }

  void send(std::shared_ptr<const std::string> frame) {
    if (closed_ || queue_.size() >= kMaxQueuedFrames) return;
    queue_.push_back(std::move(frame));
    if (queue_.size() == 1) do_write();
  }

  void do_write() {
    ws_.async_write(net::buffer(*queue_.front()),
                    beast::bind_front_handler(&WebSocketSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      queue_.clear();
      unsubscribe();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) do_write();
  }

  void unsubscribe() {
    if (subscription_ != 0) {
      service_.unsubscribe(subscription_);
      subscription_ = 0;
    }
  }

  websocket::stream<beast::tcp_stream> ws_;
  TeleopService& service_;
  std::shared_ptr<PostGate> gate_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  std::uint64_t subscription_ = 0;
  bool closed_ = false;
};

using Response = http::response<http::string_body>;

Response make_response(const http::request<http::string_body>& req, http::status status,
                       std::string_view content_type, std::string body) {
  Response res{status, req.version()};
  res.set(http::field::server, "softcr");
  res.set(http::field::content_type, beast::string_view(content_type.data(), content_type.size()));
  res.set(http::field::access_control_allow_origin, "*");
  res.keep_alive(req.keep_alive());
  res.body() = std::move(body);
  res.prepare_payload();
  return res;
}

Response json_error(const http::request<http::string_body>& req, http::status status,
                    const std::string& message) {
  return make_response(req, status, "application/json", error_frame(message).dump());
}

Response handle_request(const http::request<http::string_body>& req, TeleopService& service,
                        const HttpServerOptions& options) {
  if (req.method() != http::verb::get && req.method() != http::verb::head)
    return json_error(req, http::status::method_not_allowed, "only GET is supported");

  std::string target(req.target());
  if (auto q = target.find('?'); q != std::string::npos) target.resize(q);

  if (target == "/state") {
    const TeleopState state = service.snapshot();
    json body = state;
    body["end_effector"] = state_frame(state, service.config())["end_effector"];
    return make_response(req, http::status::ok, "application/json", body.dump());
  }
  if (target == "/config") {
    return make_response(req, http::status::ok, "application/json",
                         json(service.config()).dump());
  }

  if (!options.static_dir)
    return json_error(req, http::status::not_found, "no static assets configured");
  if (target.empty() || target.front() != '/' || target.find("..") != std::string::npos)
    return json_error(req, http::status::bad_request, "illegal request target");
  if (target.back() == '/') target += "index.html";

  const std::filesystem::path path = *options.static_dir / target.substr(1);
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path))
    return json_error(req, http::status::not_found, "not found: " + target);
  std::ostringstream content;
  content << in.rdbuf();
  Response res = make_response(req, http::status::ok, mime_type(path), content.str());
  if (req.method() == http::verb::head) res.body().clear();
  return res;
}

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, TeleopService& service, const HttpServerOptions& options,
              std::shared_ptr<PostGate> gate)
      : stream_(std::move(socket)), service_(service), options_(options), gate_(std::move(gate)) {}

  void run() {
    net::dispatch(stream_.get_executor(),
                  beast::bind_front_handler(&HttpSession::do_read, shared_from_this()));
  }

 private:
  void do_read() {
    request_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, request_,
                     beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) return do_close();
    if (ec) return;

    if (websocket::is_upgrade(request_)) {
      if (request_.target() == "/teleop") {
        stream_.expires_never();
        std::make_shared<WebSocketSession>(stream_.release_socket(), service_, gate_)
            ->run(std::move(request_));
        return;
      }
      return write(json_error(request_, http::status::not_found, "websocket endpoint is /teleop"));
    }
    write(handle_request(request_, service_, options_));
  }

  void write(Response response) {
    auto res = std::make_shared<Response>(std::move(response));
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
                        if (ec) return;
                        if (!res->keep_alive()) return self->do_close();
                        self->do_read();
                      });
  }

  void do_close() {
    beast::error_code ec;
    stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
  }

  beast::tcp_stream stream_;
  TeleopService& service_;
  const HttpServerOptions& options_;
  std::shared_ptr<PostGate> gate_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
};

}  // namespace

struct HttpServer::Impl {
  Impl(TeleopService& svc, HttpServerOptions opts)
      : service(svc), options(std::move(opts)), ioc(std::max(1, options.threads)), acceptor(ioc) {}

  ~Impl() {
    std::lock_guard lock(gate->mutex);
    gate->open = false;
  }

  void do_accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (!acceptor.is_open()) return;
      if (!ec) std::make_shared<HttpSession>(std::move(socket), service, options, gate)->run();
      do_accept();
    });
  }

  TeleopService& service;
  HttpServerOptions options;
  std::shared_ptr<PostGate> gate = std::make_shared<PostGate>();
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::vector<std::thread> threads;
};

HttpServer::HttpServer(TeleopService& service, HttpServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  beast::error_code ec;
  const auto address = net::ip::make_address(impl_->options.host, ec);
  if (ec) throw ServiceError("invalid listen address '" + impl_->options.host + "'");
  const tcp::endpoint endpoint{address, impl_->options.port};

  auto& acceptor = impl_->acceptor;
  acceptor.open(endpoint.protocol(), ec);
  if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) acceptor.bind(endpoint, ec);
  if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec)
    throw ServiceError("cannot listen on " + impl_->options.host + ":" +
                       std::to_string(impl_->options.port) + ": " + ec.message());
  impl_->do_accept();
}

HttpServer::~HttpServer() { stop(); }

unsigned short HttpServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void HttpServer::start() {
  const int n = std::max(1, impl_->options.threads);
  for (int i = 0; i < n; ++i) impl_->threads.emplace_back([this] { impl_->ioc.run(); });
}

void HttpServer::run() { impl_->ioc.run(); }

void HttpServer::stop() {
  if (!impl_) return;
  net::post(impl_->ioc, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
  });
  impl_->ioc.stop();
  for (auto& t : impl_->threads)
    if (t.joinable()) t.join();
  impl_->threads.clear();
}

}  // namespace softcr::service
