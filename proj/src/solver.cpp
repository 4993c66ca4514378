#include "smtkit/solver.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "process.hpp"
#include "smtkit/error.hpp"

namespace smtkit {

namespace {

using Clock = std::chrono::steady_clock;

// Length of the first complete reply in `buf` (leading whitespace
// included), or 0 when more input is needed.
std::size_t complete_reply(std::string_view buf) {
  std::size_t i = 0;
  const std::size_t n = buf.size();
  auto space = [](char c) { return c == ' ' || c == '\n' || c == '\r' || c == '\t'; };
  for (;;) {
    while (i < n && space(buf[i])) ++i;
    if (i < n && buf[i] == ';') {
      const auto nl = buf.find('\n', i);
      if (nl == std::string_view::npos) return 0;
      i = nl + 1;
      continue;
    }
    break;
  }
  if (i >= n) return 0;

  // Position after a string literal starting at `j`, or npos if incomplete.
  auto skip_string = [&](std::size_t j) -> std::size_t {
    ++j;
    while (j < n) {
      if (buf[j] == '"') {
        if (j + 1 >= n) return std::string_view::npos;
        if (buf[j + 1] != '"') return j + 1;
        j += 2;
        continue;
      }
      ++j;
    }
    return std::string_view::npos;
  };

  if (buf[i] == '(') {
    int depth = 0;
    std::size_t j = i;
    while (j < n) {
      const char c = buf[j];
      if (c == '"') {
        j = skip_string(j);
        if (j == std::string_view::npos) return 0;
        continue;
      }
      if (c == '|') {
        const auto close = buf.find('|', j + 1);
        if (close == std::string_view::npos) return 0;
        j = close + 1;
        continue;
      }
      if (c == ';') {
        const auto nl = buf.find('\n', j);
        if (nl == std::string_view::npos) return 0;
        j = nl + 1;
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) return j + 1;
      ++j;
    }
    return 0;
  }
  if (buf[i] == '"') {
    const std::size_t end = skip_string(i);
    return end == std::string_view::npos ? 0 : end;
  }
  std::size_t j = i;
  while (j < n && !space(buf[j]) && buf[j] != '(' && buf[j] != ')') ++j;
  return j < n ? j : 0;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

// Config --------------------------------------------------------------------

SolverConfig SolverConfig::z3() {
  SolverConfig c;
  c.command = "z3";
  c.args = {"-smt2", "-in"};
  return c;
}

SolverConfig SolverConfig::cvc5() {
  SolverConfig c;
  c.command = "cvc5";
  c.args = {"--interactive", "--produce-models"};
  return c;
}

SolverConfig SolverConfig::from_command_line(std::string_view line) {
  std::istringstream words{std::string(line)};
  SolverConfig c;
  std::string w;
  if (words >> w) c.command = w;
  while (words >> w) c.args.push_back(w);
  if (c.command.empty()) throw Error(Errc::SpawnFailure, "empty solver command line");
  return c;
}

SolverConfig SolverConfig::from_env() {
  if (const char* env = std::getenv("SMTKIT_SOLVER"); env && *env) {
    return from_command_line(env);
  }
  return z3();
}

bool solver_available(const SolverConfig& config) {
  const std::string& cmd = config.command;
  if (cmd.empty()) return false;
  if (cmd.find('/') != std::string::npos) return ::access(cmd.c_str(), X_OK) == 0;
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) dir = ".";
    if (::access((dir + "/" + cmd).c_str(), X_OK) == 0) return true;
  }
  return false;
}

// Session -------------------------------------------------------------------

struct Session::Impl {
  SolverConfig config;
  std::unique_ptr<detail::Process> proc;
  std::string buffer;
  std::atomic<bool> alive{false};
  std::atomic<bool> busy{false};
  std::uint32_t depth = 0;
  std::map<std::string, cmd::DeclareFun, std::less<>> declared;
  std::vector<std::vector<std::string>> frames{1};

  explicit Impl(SolverConfig c) : config(std::move(c)) {}

  [[noreturn]] void fail_dead(const std::string& what) {
    alive = false;
    std::string msg = what;
    if (proc && !proc->stderr_text().empty()) msg += "; stderr: " + trim(proc->stderr_text());
    throw Error(Errc::DeadSession, msg);
  }

  std::string read_reply(Clock::time_point deadline, Errc timeout_code) {
    for (;;) {
      if (const std::size_t len = complete_reply(buffer)) {
        std::string reply = trim(std::string_view(buffer).substr(0, len));
        buffer.erase(0, len);
        return reply;
      }
      if (!alive) fail_dead("session closed during read");
      const auto slice = std::min(deadline, Clock::now() + std::chrono::milliseconds(100));
      switch (proc->read_some(buffer, slice)) {
        case detail::Process::ReadStatus::Data: break;
        case detail::Process::ReadStatus::Eof: fail_dead("solver exited");
        case detail::Process::ReadStatus::Timeout:
          if (Clock::now() >= deadline) {
            alive = false;
            proc->kill_now();
            throw Error(timeout_code, "no reply within " +
                                          std::to_string(config.read_timeout.count()) + " ms");
          }
          break;
      }
    }
  }

  struct BusyGuard {
    std::atomic<bool>& flag;
    explicit BusyGuard(std::atomic<bool>& f) : flag(f) { flag = true; }
    ~BusyGuard() { flag = false; }
  };

  std::vector<std::string> exchange(std::string_view command, std::size_t replies,
                                    Errc timeout_code = Errc::ReadTimeout) {
    if (!alive) throw Error(Errc::DeadSession, "session is closed");
    BusyGuard guard(busy);
    std::string line(command);
    line += '\n';
    if (!proc->write_all(line)) fail_dead("solver closed its input");
    const auto deadline = Clock::now() + config.read_timeout;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < replies; ++i) out.push_back(read_reply(deadline, timeout_code));
    if (config.on_exchange) {
      for (const std::string& r : out) config.on_exchange(command, r);
    }
    return out;
  }

  std::string exchange_one(std::string_view command, Errc timeout_code = Errc::ReadTimeout) {
    return exchange(command, 1, timeout_code).front();
  }

  [[noreturn]] void solver_error(const std::string& message) {
    std::string msg = message;
    if (proc && !proc->stderr_text().empty()) msg += "; stderr: " + trim(proc->stderr_text());
    throw Error(Errc::SolverError, msg);
  }

  void expect_success(std::string_view command, Errc timeout_code = Errc::ReadTimeout) {
    const std::string reply = exchange_one(command, timeout_code);
    if (reply == "success") return;
    try {
      if (auto msg = error_message(parse_one(reply))) solver_error(*msg);
    } catch (const Error& e) {
      if (e.code() == Errc::SolverError) throw;
    }
    throw Error(Errc::UnrecognizedResponse, "expected 'success' after " + std::string(command) +
                                                ", got: " + reply);
  }

  SymbolTable symbols() const {
    SymbolTable table;
    for (const auto& [name, decl] : declared) table.declare(decl);
    return table;
  }
};

Session::Session(SolverConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  Impl& s = *impl_;
  if (s.config.command.empty()) throw Error(Errc::SpawnFailure, "no solver command configured");
  s.proc = std::make_unique<detail::Process>(s.config.command, s.config.args);
  s.alive = true;
  try {
    s.expect_success("(set-option :print-success true)", Errc::HandshakeTimeout);
    s.expect_success("(set-option :produce-models true)", Errc::HandshakeTimeout);
    if (s.config.logic) s.expect_success("(set-logic " + *s.config.logic + ")");
  } catch (const Error& e) {
    close();
    if (e.code() == Errc::DeadSession) {
      throw Error(Errc::SpawnFailure, "solver did not complete the handshake: " + e.detail());
    }
    throw;
  }
}

Session::~Session() {
  if (impl_) close();
}

Session::Session(Session&&) noexcept = default;
Session& Session::operator=(Session&& other) noexcept {
  if (this != &other) {
    if (impl_) close();
    impl_ = std::move(other.impl_);
  }
  return *this;
}

bool Session::alive() const noexcept { return impl_ && impl_->alive; }
std::uint32_t Session::stack_depth() const noexcept { return impl_ ? impl_->depth : 0; }
std::string Session::stderr_text() const {
  return impl_ && impl_->proc ? impl_->proc->stderr_text() : std::string();
}

void Session::assert_terms(std::span<const Term> terms) {
  if (!alive()) throw Error(Errc::DeadSession, "session is closed");
  Impl& s = *impl_;
  for (const Term& t : terms) {
    if (!t.sort().is_bool()) {
      throw Error(Errc::NonBoolAssert, "cannot assert a term of sort " + t.sort().to_string());
    }
  }
  std::vector<cmd::DeclareFun> fresh;
  for (const Command& c : collect_decls(terms)) {
    const auto& d = std::get<cmd::DeclareFun>(c);
    auto it = s.declared.find(d.name);
    if (it == s.declared.end()) {
      fresh.push_back(d);
    } else if (!(it->second == d)) {
      throw Error(Errc::SortConflict, "'" + d.name + "' was declared with a different signature");
    }
  }
  for (cmd::DeclareFun& d : fresh) {
    s.expect_success(emit_command(d));
    s.frames.back().push_back(d.name);
    s.declared.emplace(d.name, std::move(d));
  }
  for (const Term& t : terms) s.expect_success("(assert " + emit_term(t) + ")");
}

void Session::assert_terms(std::initializer_list<Term> terms) {
  assert_terms(std::span<const Term>(terms.begin(), terms.size()));
}

void Session::push(std::uint32_t n) {
  if (!alive()) throw Error(Errc::DeadSession, "session is closed");
  const std::string text = emit_command(make_push(n));
  impl_->expect_success(text);
  impl_->depth += n;
  for (std::uint32_t i = 0; i < n; ++i) impl_->frames.emplace_back();
}

void Session::pop(std::uint32_t n) {
  if (!alive()) throw Error(Errc::DeadSession, "session is closed");
  Impl& s = *impl_;
  const std::string text = emit_command(make_pop(n));
  if (n > s.depth) {
    throw Error(Errc::StackUnderflow, "pop " + std::to_string(n) + " at depth " +
                                          std::to_string(s.depth));
  }
  s.expect_success(text);
  s.depth -= n;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (const std::string& name : s.frames.back()) s.declared.erase(name);
    s.frames.pop_back();
  }
}

CheckOutcome Session::check() {
  if (!alive()) throw Error(Errc::DeadSession, "session is closed");
  Impl& s = *impl_;
  CheckOutcome out;
  const std::string reply = s.exchange_one("(check-sat)");
  try {
    out.status = parse_check_sat(reply);
  } catch (const Error& e) {
    if (e.code() != Errc::SolverError) throw;
    out.status = CheckStatus::Unknown;
    out.error = e.detail();
    return out;
  }
  if (out.status != CheckStatus::Sat) return out;

  const SExpr model_reply = parse_one(s.exchange_one("(get-model)"));
  if (auto msg = error_message(model_reply)) {
    out.error = *msg;
    return out;
  }
  out.model = parse_model(model_reply, s.symbols());
  return out;
}

std::vector<std::pair<SExpr, ConstVal>> Session::get_value(std::span<const Term> terms) {
  if (!alive()) throw Error(Errc::DeadSession, "session is closed");
  if (terms.empty()) return {};
  const std::string reply =
      impl_->exchange_one(emit_command(cmd::GetValue{{terms.begin(), terms.end()}}));
  return parse_get_value(parse_one(reply));
}

std::string Session::raw_send(std::string_view command_text) {
  if (!alive()) throw Error(Errc::DeadSession, "session is closed");
  std::size_t count = 1;
  try {
    count = parse_sexprs(command_text).size();
  } catch (const Error&) {
    // incomplete input: the solver decides what, if anything, to answer
  }
  if (count == 0) return {};
  std::string joined;
  for (const std::string& r : impl_->exchange(command_text, count)) {
    if (!joined.empty()) joined += '\n';
    joined += r;
  }
  return joined;
}

void Session::close() noexcept {
  if (!impl_ || !impl_->proc) return;
  Impl& s = *impl_;
  if (!s.alive.exchange(false)) return;
  if (s.busy) {
    // Another thread is blocked reading; it will observe the dead flag.
    s.proc->signal_kill();
    return;
  }
  s.proc->write_all("(exit)\n");
  s.proc->close_stdin();
  if (!s.proc->wait_exit(std::chrono::milliseconds(500))) s.proc->kill_now();
}

// One-shot entry points ---------------------------------------------------

CheckOutcome check(std::span<const Term> terms, const SolverConfig& config) {
  Session session(config);
  try {
    session.assert_terms(terms);
  } catch (const Error& e) {
    if (e.code() != Errc::SolverError) throw;
    CheckOutcome out;
    out.error = e.detail();
    return out;
  }
  return session.check();
}

CheckStatus check_file(const std::filesystem::path& path, const SolverConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  const std::vector<SExpr> commands = parse_sexprs(text.str());

  SolverConfig cfg = config;
  const bool has_logic = std::any_of(commands.begin(), commands.end(),
                                     [](const SExpr& e) { return e.has_head("set-logic"); });
  if (has_logic) cfg.logic.reset();

  Session session(cfg);
  std::optional<CheckStatus> last;
  for (const SExpr& c : commands) {
    if (c.has_head("exit")) break;
    if (c.has_head("set-option") && c.size() >= 2 && c[1].is_atom(":print-success")) continue;
    const std::string reply = session.raw_send(render(c));
    if (c.has_head("check-sat")) {
      last = parse_check_sat(reply);
      continue;
    }
    if (auto msg = error_message(parse_one(reply))) throw Error(Errc::SolverError, *msg);
  }
  if (!last) last = parse_check_sat(session.raw_send("(check-sat)"));
  return *last;
}

}  // namespace smtkit
