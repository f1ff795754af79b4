#include "softcr/service/teleop_service.hpp"

#include <chrono>
#include <stdexcept>
#include <vector>

#include "softcr/io.hpp"

namespace softcr::service {

TeleopService::TeleopService(SimConfig config, std::optional<std::filesystem::path> trajectory_log)
    : simulator_(config) {
  config.validate();
  if (trajectory_log) {
    log_.open(*trajectory_log);
    if (!log_) throw std::runtime_error("cannot open trajectory log " + trajectory_log->string());
    log_ << "tick,t_s,mode,bend1_rad,bend2_rad,bend3_rad,bend4_rad,ssr_x_m,ssr_y_m,"
            "ssr_heading_rad,wheel_speed_mps,clamped\n";
  }
}

TeleopService::~TeleopService() { stop(); }

void TeleopService::start() {
  if (running_.exchange(true)) return;
  ticker_ = std::thread([this] { run(); });
}

void TeleopService::stop() {
  running_ = false;
  if (ticker_.joinable()) ticker_.join();
}

TeleopState TeleopService::tick_once() {
  if (running_) throw std::logic_error("tick_once() while the ticker thread is running");
  return advance();
}

std::uint64_t TeleopService::subscribe(FrameHandler handler) {
  std::lock_guard lock(subscribers_mutex_);
  const auto id = next_id_++;
  subscribers_.emplace(id, std::move(handler));
  return id;
}

void TeleopService::unsubscribe(std::uint64_t id) {
  std::lock_guard lock(subscribers_mutex_);
  subscribers_.erase(id);
}

TeleopState TeleopService::advance() {
  const TeleopState state = simulator_.tick();
  auto frame = std::make_shared<const std::string>(state_frame(state, config()).dump());

  if (log_.is_open()) {
    log_ << state.tick << ',' << format_double(state.sim_time) << ',' << to_string(state.mode);
    for (double b : state.module_bends) log_ << ',' << format_double(b);
    log_ << ',' << format_double(state.ssr_pose.x) << ',' << format_double(state.ssr_pose.y) << ','
         << format_double(state.ssr_pose.heading) << ',' << format_double(state.wheel_speed) << ','
         << (state.clamped ? 1 : 0) << '\n';
  }

  std::vector<FrameHandler> handlers;
  {
    std::lock_guard lock(subscribers_mutex_);
    handlers.reserve(subscribers_.size());
    for (const auto& [id, handler] : subscribers_) handlers.push_back(handler);
  }
  for (const auto& handler : handlers) handler(frame);
  return state;
}

void TeleopService::run() {
  using clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<clock::duration>(
      std::chrono::duration<double>(config().tick_period()));
  auto next = clock::now() + period;
  while (running_) {
    std::this_thread::sleep_until(next);
    advance();
    next += period;
    // After a stall, resume from now rather than replaying missed ticks.
    if (clock::now() > next + 10 * period) next = clock::now() + period;
  }
  if (log_.is_open()) log_.flush();
}

}  // namespace softcr::service
