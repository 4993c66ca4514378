#include "process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

#include "smtkit/error.hpp"

namespace smtkit::detail {

namespace {

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    struct sigaction current {};
    if (sigaction(SIGPIPE, nullptr, &current) == 0 && current.sa_handler == SIG_DFL) {
      signal(SIGPIPE, SIG_IGN);
    }
  });
}

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

struct Pipe {
  int read = -1;
  int write = -1;
  Pipe() {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) {
      throw Error(Errc::SpawnFailure, std::string("pipe: ") + std::strerror(errno));
    }
    read = fds[0];
    write = fds[1];
  }
  ~Pipe() {
    close_fd(read);
    close_fd(write);
  }
};

}  // namespace

Process::Process(const std::string& program, const std::vector<std::string>& args) {
  ignore_sigpipe_once();
  Pipe in, out, err, status;

  std::vector<std::string> storage;
  storage.push_back(program);
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);

  pid_ = ::fork();
  if (pid_ < 0) throw Error(Errc::SpawnFailure, std::string("fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    ::dup2(in.read, STDIN_FILENO);
    ::dup2(out.write, STDOUT_FILENO);
    ::dup2(err.write, STDERR_FILENO);
    ::execvp(argv[0], argv.data());
    const int code = errno;
    [[maybe_unused]] auto n = ::write(status.write, &code, sizeof code);
    ::_exit(127);
  }

  close_fd(status.write);
  int code = 0;
  ssize_t n;
  do {
    n = ::read(status.read, &code, sizeof code);
  } while (n < 0 && errno == EINTR);
  if (n == sizeof code) {
    ::waitpid(pid_, nullptr, 0);
    reaped_ = true;
    throw Error(Errc::SpawnFailure, "cannot execute '" + program + "': " + std::strerror(code));
  }

  std::swap(in_, in.write);
  std::swap(out_, out.read);
  std::swap(err_, err.read);
  ::fcntl(err_, F_SETFL, ::fcntl(err_, F_GETFL) | O_NONBLOCK);
}

Process::~Process() {
  close_fd(in_);
  if (!reaped_) {
    if (!wait_exit(std::chrono::milliseconds(0))) {
      kill_now();
    }
  }
  close_fd(out_);
  close_fd(err_);
}

bool Process::write_all(std::string_view data) {
  if (in_ < 0) return false;
  while (!data.empty()) {
    const ssize_t n = ::write(in_, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

void Process::drain_stderr() {
  if (err_ < 0) return;
  char buf[4096];
  for (;;) {
    const ssize_t n = ::read(err_, buf, sizeof buf);
    if (n > 0) {
      stderr_.append(buf, static_cast<std::size_t>(n));
    } else {
      if (n == 0) close_fd(err_);
      return;
    }
  }
}

Process::ReadStatus Process::read_some(std::string& out, Clock::time_point deadline) {
  for (;;) {
    const auto now = Clock::now();
    if (now >= deadline) return ReadStatus::Timeout;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
    pollfd fds[2] = {{out_, POLLIN, 0}, {err_, POLLIN, 0}};
    const int ready = ::poll(fds, err_ >= 0 ? 2 : 1, static_cast<int>(left.count()) + 1);
    if (ready < 0) {
      if (errno == EINTR) continue;
      return ReadStatus::Eof;
    }
    if (ready == 0) continue;
    if (err_ >= 0 && (fds[1].revents & (POLLIN | POLLHUP))) drain_stderr();
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[8192];
      const ssize_t n = ::read(out_, buf, sizeof buf);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        drain_stderr();
        return ReadStatus::Eof;
      }
      out.append(buf, static_cast<std::size_t>(n));
      return ReadStatus::Data;
    }
  }
}

void Process::close_stdin() { close_fd(in_); }

bool Process::wait_exit(std::chrono::milliseconds grace) {
  if (reaped_) return true;
  const auto deadline = Clock::now() + grace;
  for (;;) {
    const pid_t r = ::waitpid(pid_, nullptr, WNOHANG);
    if (r == pid_ || (r < 0 && errno == ECHILD)) {
      reaped_ = true;
      return true;
    }
    if (Clock::now() >= deadline) return false;
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

void Process::kill_now() {
  if (reaped_) return;
  ::kill(pid_, SIGKILL);
  ::waitpid(pid_, nullptr, 0);
  reaped_ = true;
}

void Process::signal_kill() {
  if (!reaped_) ::kill(pid_, SIGKILL);
}

}  // namespace smtkit::detail
