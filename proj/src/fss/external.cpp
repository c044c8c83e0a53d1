#include "jfs/fss/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "jfs/fss/wire.hpp"

namespace jfs::fss {
namespace {

std::string errno_text(int err) { return std::strerror(err); }

void close_fd(int& fd) noexcept {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

std::vector<std::string> split_argv(const std::string& comma_separated) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : comma_separated) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

ExternalBackend::ExternalBackend(std::vector<std::string> argv, ExternalOptions options)
    : argv_(std::move(argv)), options_(options) {
  if (argv_.empty() || argv_.front().empty()) throw SpawnError("empty adapter command");

  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
    throw SpawnError("socketpair: " + errno_text(errno));
  int status_pipe[2];
  if (::pipe2(status_pipe, O_CLOEXEC) != 0) {
    ::close(sv[0]);
    ::close(sv[1]);
    throw SpawnError("pipe: " + errno_text(errno));
  }

  std::vector<char*> cargv;
  for (auto& a : argv_) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    const int err = errno;
    ::close(sv[0]);
    ::close(sv[1]);
    ::close(status_pipe[0]);
    ::close(status_pipe[1]);
    throw SpawnError("fork: " + errno_text(err));
  }
  if (pid == 0) {
    // Child: only async-signal-safe calls until exec.
    ::dup2(sv[1], STDIN_FILENO);
    ::dup2(sv[1], STDOUT_FILENO);
    ::execvp(cargv[0], cargv.data());
    const int err = errno;
    [[maybe_unused]] auto n = ::write(status_pipe[1], &err, sizeof err);
    ::_exit(127);
  }

  ::close(sv[1]);
  ::close(status_pipe[1]);
  fd_ = sv[0];
  pid_ = pid;

  int child_errno = 0;
  ssize_t got;
  do {
    got = ::read(status_pipe[0], &child_errno, sizeof child_errno);
  } while (got < 0 && errno == EINTR);
  ::close(status_pipe[0]);
  if (got == static_cast<ssize_t>(sizeof child_errno)) {
    close_fd(fd_);
    ::waitpid(pid_, nullptr, 0);
    pid_ = -1;
    throw SpawnError("cannot execute '" + argv_.front() + "': " + errno_text(child_errno));
  }

  try {
    send_line(wire::hello_request());
    std::string reply;
    if (!read_line(reply)) throw ProtocolError("adapter closed the stream during the handshake");
    adapter_name_ = wire::parse_hello(reply);
  } catch (const BackendError& e) {
    shutdown();
    throw ProtocolError(std::string("handshake failed: ") + e.what());
  } catch (...) {
    shutdown();
    throw;
  }
}

ExternalBackend::~ExternalBackend() { shutdown(); }

void ExternalBackend::shutdown() noexcept {
  if (fd_ >= 0 && !broken_) {
    const std::string line = wire::shutdown_request() + "\n";
    [[maybe_unused]] auto n = ::send(fd_, line.data(), line.size(), MSG_NOSIGNAL);
  }
  close_fd(fd_);
  if (pid_ > 0) {
    // Grace period for a clean exit, then kill.
    for (int i = 0; i < 100; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
}

void ExternalBackend::send_line(const std::string& line) {
  std::string data = line;
  data.push_back('\n');
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw BackendError("write to adapter failed: " + errno_text(errno));
    }
    sent += static_cast<std::size_t>(n);
  }
}

bool ExternalBackend::read_line(std::string& line) {
  const auto deadline = std::chrono::steady_clock::now() + options_.read_timeout;
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return true;
    }
    // Round up so the deadline is never cut short by truncation.
    const auto left = std::chrono::ceil<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      broken_ = true;
      throw BackendError("adapter did not reply within " + std::to_string(options_.read_timeout.count()) + " ms");
    }
    pollfd p{fd_, POLLIN, 0};
    const int r = ::poll(&p, 1, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw BackendError("poll on adapter failed: " + errno_text(errno));
    }
    if (r == 0) continue;
    char chunk[65536];
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw BackendError("read from adapter failed: " + errno_text(errno));
    }
    if (n == 0) {
      broken_ = true;
      return false;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

BinaryMask ExternalBackend::do_predict(const RgbImage& query, std::span<const SupportRef> support) {
  std::lock_guard lock(mutex_);
  if (broken_ || fd_ < 0) throw BackendError("adapter connection is no longer usable");
  const std::uint64_t id = next_id_++;
  send_line(wire::predict_request(id, query, support));
  std::string reply;
  if (!read_line(reply)) throw BackendError("adapter exited while handling request " + std::to_string(id));
  try {
    return wire::parse_result(reply, id, query.dims());
  } catch (const ProtocolError&) {
    broken_ = true;
    throw;
  }
}

}  // namespace jfs::fss
