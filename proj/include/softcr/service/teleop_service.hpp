#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "softcr/teleop_sim.hpp"

namespace softcr::service {

/// Owns the simulation ticker. Connection handlers only talk to it through
/// submit() (ordered input queue) and the per-tick frame broadcast.
class TeleopService {
 public:
  /// Receives the serialized state frame of every tick. The same string
  /// instance is handed to every subscriber.
  using FrameHandler = std::function<void(std::shared_ptr<const std::string> frame)>;

  explicit TeleopService(SimConfig config,
                         std::optional<std::filesystem::path> trajectory_log = std::nullopt);
  ~TeleopService();

  TeleopService(const TeleopService&) = delete;
  TeleopService& operator=(const TeleopService&) = delete;

  /// Starts the wall-clock ticker thread at config().tick_rate.
  void start();
  void stop();
  bool running() const { return running_; }

  /// Advances one tick on the calling thread. Only valid while not started.
  TeleopState tick_once();

  void submit(const TeleopInput& input) { simulator_.submit(input); }
  TeleopState snapshot() const { return simulator_.snapshot(); }
  const SimConfig& config() const { return simulator_.config(); }

  std::uint64_t subscribe(FrameHandler handler);
  void unsubscribe(std::uint64_t id);

 private:
  TeleopState advance();
  void run();

  Simulator simulator_;
  std::ofstream log_;
  std::mutex subscribers_mutex_;
  std::map<std::uint64_t, FrameHandler> subscribers_;
  std::uint64_t next_id_ = 1;
  std::atomic<bool> running_{false};
  std::thread ticker_;
};

}  // namespace softcr::service
