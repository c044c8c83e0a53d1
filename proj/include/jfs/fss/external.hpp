#pragma once

#include <sys/types.h>

#include <chrono>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "jfs/fss/backend.hpp"

namespace jfs::fss {

struct ExternalOptions {
  // Upper bound on waiting for any single reply line.
  std::chrono::milliseconds read_timeout{60000};
};

/// Client handle for an adapter process speaking wire protocol v1.
///
/// The constructor spawns `argv` and performs the hello handshake. Requests
/// are strictly serialised with one outstanding at a time. After any
/// transport failure the handle is poisoned and every later predict throws
/// BackendError. Not safe for concurrent use (concurrency_safe() is false).
class ExternalBackend final : public FssBackend {
 public:
  explicit ExternalBackend(std::vector<std::string> argv, ExternalOptions options = {});
  ~ExternalBackend() override;

  ExternalBackend(const ExternalBackend&) = delete;
  ExternalBackend& operator=(const ExternalBackend&) = delete;

  std::string name() const override { return "external:" + adapter_name_; }
  bool concurrency_safe() const override { return false; }

  const std::string& adapter_name() const noexcept { return adapter_name_; }
  pid_t pid() const noexcept { return pid_; }

 protected:
  BinaryMask do_predict(const RgbImage& query, std::span<const SupportRef> support) override;

 private:
  void send_line(const std::string& line);
  // Returns false on EOF.
  bool read_line(std::string& line);
  void shutdown() noexcept;

  std::vector<std::string> argv_;
  ExternalOptions options_;
  int fd_ = -1;
  pid_t pid_ = -1;
  std::string buffer_;
  std::string adapter_name_;
  std::uint64_t next_id_ = 1;
  bool broken_ = false;
  std::mutex mutex_;
};

/// Splits the comma-separated argv form used on the command line.
std::vector<std::string> split_argv(const std::string& comma_separated);

}  // namespace jfs::fss
