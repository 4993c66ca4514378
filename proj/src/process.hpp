#pragma once

#include <sys/types.h>

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace smtkit::detail {

/// Child process with stdin/stdout/stderr attached to pipes.
class Process {
 public:
  using Clock = std::chrono::steady_clock;

  /// Throws SpawnFailure when the program cannot be executed.
  Process(const std::string& program, const std::vector<std::string>& args);
  ~Process();

  Process(const Process&) = delete;
  Process& operator=(const Process&) = delete;

  /// False when the child has closed its stdin.
  bool write_all(std::string_view data);

  enum class ReadStatus { Data, Eof, Timeout };

  /// Appends whatever stdout bytes arrive before `deadline`. Stderr is
  /// drained into stderr_text() along the way.
  ReadStatus read_some(std::string& out, Clock::time_point deadline);

  const std::string& stderr_text() const noexcept { return stderr_; }

  void close_stdin();
  /// Waits up to `grace` for the child to exit on its own.
  bool wait_exit(std::chrono::milliseconds grace);
  void kill_now();
  /// Sends SIGKILL without reaping; safe while another thread reads.
  void signal_kill();
  pid_t pid() const noexcept { return pid_; }

 private:
  void drain_stderr();

  pid_t pid_ = -1;
  bool reaped_ = false;
  int in_ = -1;
  int out_ = -1;
  int err_ = -1;
  std::string stderr_;
};

}  // namespace smtkit::detail
