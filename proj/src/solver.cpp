#include "streamverify/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

extern char** environ;

namespace streamverify {

using Clock = std::chrono::steady_clock;

SolverConfig SolverConfig::from_environment() {
  SolverConfig cfg;
  if (const char* env = std::getenv("STREAMVERIFY_SOLVER"); env && *env) cfg.executable = env;
  cfg.args = default_args(cfg.executable);
  return cfg;
}

std::vector<std::string> SolverConfig::default_args(const std::string& executable) {
  std::string base = std::filesystem::path(executable).filename().string();
  if (base.starts_with("z3")) return {"-in"};
  if (base.starts_with("cvc5") || base.starts_with("cvc4")) return {"--lang=smt2", "--incremental"};
  if (base.starts_with("yices")) return {"--incremental"};
  return {};
}

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Valid: return "valid";
    case CheckStatus::Invalid: return "invalid";
    case CheckStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// Removes one complete top-level S-expression or atom from the front of
// `buffer`, if present.
std::optional<std::string> take_item(std::string& buffer, bool at_eof) {
  std::size_t i = 0;
  while (i < buffer.size() && std::isspace(static_cast<unsigned char>(buffer[i]))) ++i;
  if (i == buffer.size()) return std::nullopt;
  std::size_t start = i;
  if (buffer[i] == '(') {
    int depth = 0;
    for (; i < buffer.size(); ++i) {
      char c = buffer[i];
      if (c == '"' || c == '|') {
        std::size_t close = buffer.find(c, i + 1);
        if (close == std::string::npos) return std::nullopt;
        i = close;
      } else if (c == '(') {
        ++depth;
      } else if (c == ')' && --depth == 0) {
        std::string item = buffer.substr(start, i + 1 - start);
        buffer.erase(0, i + 1);
        return item;
      }
    }
    return std::nullopt;
  }
  while (i < buffer.size() && !std::isspace(static_cast<unsigned char>(buffer[i])) && buffer[i] != '(') ++i;
  if (i == buffer.size() && !at_eof) return std::nullopt;
  std::string item = buffer.substr(start, i - start);
  buffer.erase(0, i);
  return item;
}

class Session {
 public:
  Session(const SolverConfig& cfg, Clock::time_point deadline) : deadline_(deadline) {
    static std::once_flag ignore_sigpipe;
    std::call_once(ignore_sigpipe, [] { ::signal(SIGPIPE, SIG_IGN); });

    int in[2], out[2];
    if (::pipe2(in, O_CLOEXEC) != 0) throw std::runtime_error(std::strerror(errno));
    if (::pipe2(out, O_CLOEXEC) != 0) {
      ::close(in[0]);
      ::close(in[1]);
      throw std::runtime_error(std::strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in[0], 0);
    posix_spawn_file_actions_adddup2(&actions, out[1], 1);
    posix_spawn_file_actions_adddup2(&actions, out[1], 2);
    std::vector<std::string> argv_storage{cfg.executable};
    argv_storage.insert(argv_storage.end(), cfg.args.begin(), cfg.args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());
    argv.push_back(nullptr);
    int rc = posix_spawnp(&pid_, cfg.executable.c_str(), &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(in[0]);
    ::close(out[1]);
    in_ = in[1];
    out_ = out[0];
    if (rc != 0) {
      pid_ = -1;
      throw std::runtime_error("cannot start solver '" + cfg.executable + "': " + std::strerror(rc));
    }
    ::fcntl(in_, F_SETFL, ::fcntl(in_, F_GETFL) | O_NONBLOCK);
  }

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  ~Session() {
    close_input();
    if (out_ >= 0) ::close(out_);
    if (pid_ > 0) {
      int status = 0;
      if (::waitpid(pid_, &status, WNOHANG) == 0) {
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
      }
    }
  }

  bool timed_out() const { return timed_out_; }
  bool eof() const { return eof_; }
  const std::string& output() const { return all_; }

  /// Writes everything, reading replies meanwhile. False on timeout or a
  /// closed pipe.
  bool write(std::string_view text) {
    while (!text.empty()) {
      pollfd fds[2] = {{in_, POLLOUT, 0}, {out_, POLLIN, 0}};
      if (!wait(fds, eof_ ? 1 : 2)) return false;
      if (fds[1].revents & (POLLIN | POLLHUP)) read_some();
      if (fds[0].revents & (POLLERR | POLLHUP)) return false;
      if (fds[0].revents & POLLOUT) {
        ssize_t n = ::write(in_, text.data(), text.size());
        if (n < 0 && errno != EAGAIN && errno != EINTR) return false;
        if (n > 0) text.remove_prefix(static_cast<std::size_t>(n));
      }
    }
    return true;
  }

  void close_input() {
    if (in_ >= 0) ::close(in_);
    in_ = -1;
  }

  std::optional<std::string> next_item() {
    while (true) {
      if (auto item = take_item(buffer_, eof_)) return item;
      if (eof_) return std::nullopt;
      pollfd fds[1] = {{out_, POLLIN, 0}};
      if (!wait(fds, 1)) return std::nullopt;
      read_some();
    }
  }

 private:
  bool wait(pollfd* fds, nfds_t count) {
    while (true) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline_ - Clock::now()).count();
      if (left <= 0) {
        timed_out_ = true;
        return false;
      }
      int rc = ::poll(fds, count, static_cast<int>(std::min<long long>(left, 1000)));
      if (rc > 0) return true;
      if (rc < 0 && errno != EINTR) return false;
    }
  }

  void read_some() {
    char buf[65536];
    ssize_t n = ::read(out_, buf, sizeof buf);
    if (n > 0) {
      buffer_.append(buf, static_cast<std::size_t>(n));
      all_.append(buf, static_cast<std::size_t>(n));
    } else if (n == 0 || (errno != EAGAIN && errno != EINTR)) {
      eof_ = true;
    }
  }

  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  Clock::time_point deadline_;
  std::string buffer_;
  std::string all_;
  bool eof_ = false;
  bool timed_out_ = false;
};

QueryResult unknown(std::string reason, std::string output = {}) {
  QueryResult r;
  r.answer = QueryResult::Answer::Unknown;
  r.reason = std::move(reason);
  r.output = std::move(output);
  return r;
}

}  // namespace

QueryResult run_query(const std::string& script, const std::vector<std::string>& probes, const SolverConfig& cfg,
                      bool want_model) {
  const auto start = Clock::now();
  const auto deadline = start + std::chrono::milliseconds(static_cast<long long>(cfg.timeout_seconds * 1000));
  auto finish = [&](QueryResult r) {
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
  };
  std::optional<Session> session;
  try {
    session.emplace(cfg, deadline);
  } catch (const std::exception& e) {
    return finish(unknown(e.what()));
  }
  Session& s = *session;
  auto failure = [&](const std::string& what) {
    if (s.timed_out()) return finish(unknown("timeout after " + std::to_string(cfg.timeout_seconds) + " s", s.output()));
    return finish(unknown(what, s.output()));
  };

  if (!s.write(script)) return failure("solver stopped reading input");
  std::string errors;
  std::optional<std::string> verdict;
  while (auto item = s.next_item()) {
    if (*item == "sat" || *item == "unsat" || *item == "unknown") {
      verdict = item;
      break;
    }
    if (*item != "success") errors += *item + "\n";
  }
  if (!verdict) return failure(errors.empty() ? "solver gave no answer" : "solver error: " + errors);
  if (!errors.empty()) {
    s.write("(exit)\n");
    return failure("solver error: " + errors);
  }

  QueryResult r;
  if (*verdict == "unsat") {
    // An unsat followed by complaints is not trusted.
    s.write("(exit)\n");
    s.close_input();
    while (auto item = s.next_item())
      if (*item != "success") errors += *item + "\n";
    if (!errors.empty()) return failure("solver error after unsat: " + errors);
    r.answer = QueryResult::Answer::Unsat;
    r.output = s.output();
    return finish(std::move(r));
  }
  if (*verdict == "unknown") {
    s.write("(get-info :reason-unknown)\n(exit)\n");
    s.close_input();
    std::string reason = "solver returned unknown";
    if (auto item = s.next_item()) reason += ": " + *item;
    return failure(reason);
  }

  r.answer = QueryResult::Answer::Sat;
  std::string followup;
  if (want_model) followup += "(get-model)\n";
  if (!probes.empty()) {
    followup += "(get-value (";
    for (const auto& p : probes) followup += p + " ";
    followup += "))\n";
  }
  followup += "(exit)\n";
  if (!s.write(followup)) return failure("solver stopped reading input");
  s.close_input();
  try {
    if (want_model) {
      auto item = s.next_item();
      if (!item) return failure("no model in solver reply");
      auto parsed = smt::parse_sexprs(*item);
      if (parsed.size() != 1 || !parsed[0].is_list) return failure("unexpected model reply: " + *item);
      r.model = smt::parse_model(parsed[0]);
    }
    if (!probes.empty()) {
      auto item = s.next_item();
      if (!item) return failure("no values in solver reply");
      auto parsed = smt::parse_sexprs(*item);
      if (parsed.size() == 1 && parsed[0].is_list && parsed[0].list.size() == probes.size()) {
        for (const auto& entry : parsed[0].list)
          r.values.push_back(entry.is_list && entry.list.size() == 2 ? smt::model_value(entry.list[1])
                                                                      : smt::ModelValue{entry.to_string(), {}, {}});
      }
    }
  } catch (const std::exception& e) {
    return failure(std::string("unreadable solver reply: ") + e.what());
  }
  r.output = s.output();
  return finish(std::move(r));
}

CheckResult check(const ProofObligation& ob, const SolverConfig& cfg) {
  // Probe hypotheses and goals so the report can name what failed.
  std::vector<std::string> probes;
  for (const auto& imp : ob.implications) {
    probes.push_back(smt::to_string(imp.hypothesis));
    for (const auto& [pos, goal] : imp.goals) probes.push_back(smt::to_string(goal));
  }
  QueryResult q = run_query(ob.script(cfg.logic), probes, cfg);
  CheckResult result;
  result.seconds = q.seconds;
  result.output = q.output;
  result.reason = q.reason;
  if (q.answer == QueryResult::Answer::Unsat) {
    result.status = CheckStatus::Valid;
    return result;
  }
  if (q.answer == QueryResult::Answer::Unknown) {
    result.status = CheckStatus::Unknown;
    return result;
  }
  result.status = CheckStatus::Invalid;
  CounterModel cm;
  cm.obligation = ob.name();
  cm.kind = ob.kind;
  cm.n = ob.n;
  cm.goals = ob.params.goals;
  std::set<std::string> assumed;
  std::set<std::int64_t> failed_goals;
  if (q.values.size() == probes.size()) {
    std::size_t k = 0;
    for (const auto& imp : ob.implications) {
      bool hyp = q.values[k++].boolean.value_or(false);
      bool failed = false;
      for (const auto& [pos, goal] : imp.goals) {
        bool holds = q.values[k++].boolean.value_or(true);
        if (hyp && !holds) {
          failed = true;
          cm.failures.emplace_back(imp.id, pos);
          failed_goals.insert(pos);
        }
      }
      if (failed) {
        if (std::find(cm.failed_ids.begin(), cm.failed_ids.end(), imp.id) == cm.failed_ids.end())
          cm.failed_ids.push_back(imp.id);
        assumed.insert(imp.hypothesis_variables.begin(), imp.hypothesis_variables.end());
      }
    }
  }
  cm.failed_goals.assign(failed_goals.begin(), failed_goals.end());
  const std::set<std::int64_t> equations(ob.params.equations.begin(), ob.params.equations.end());
  for (const auto& v : ob.universe->variables()) {
    ModelCell cell;
    auto it = q.model.find(v.term->symbol);
    if (it != q.model.end()) {
      cell.value = it->second;
    } else {
      cell.unconstrained = true;
      if (v.term->sort == smt::Sort::Bool)
        cell.value = {"false", false, std::nullopt};
      else
        cell.value = {"0", std::nullopt, Rational(0)};
    }
    cell.text = smt::render(cell.value, v.term->sort);
    cell.derived = !v.input && equations.count(v.position) > 0;
    cell.hypothesis = assumed.count(v.term->symbol) > 0;
    cm.cells[v.stream].push_back(std::move(cell));
  }
  result.model = std::move(cm);
  return result;
}

namespace {

std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > display_width(s) ? width - display_width(s) : 0, ' ');
}

}  // namespace

std::string render_counterexample(const CounterModel& cm, const Specification& spec) {
  std::ostringstream os;
  os << "counterexample for " << cm.obligation << " (N=" << cm.n << ")";
  if (!cm.failed_ids.empty()) {
    os << ": assertion";
    for (const auto& id : cm.failed_ids) os << " <" << id << ">";
    os << " fails at position";
    for (auto p : cm.failed_goals) os << " " << p;
  }
  os << "\n";

  std::vector<std::string> columns;
  for (const auto& i : spec.inputs) columns.push_back(i.name);
  for (const auto& o : spec.outputs) columns.push_back(o.name);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"pos"};
  header.insert(header.end(), columns.begin(), columns.end());
  rows.push_back(header);
  bool any_hypothesis = false, any_unconstrained = false;
  for (std::int64_t j = 0; j <= cm.n; ++j) {
    bool goal = std::find(cm.goals.begin(), cm.goals.end(), j) != cm.goals.end();
    std::vector<std::string> row{(goal ? "> " : "  ") + std::to_string(j)};
    for (const auto& c : columns) {
      auto it = cm.cells.find(c);
      if (it == cm.cells.end() || static_cast<std::size_t>(j) >= it->second.size()) {
        row.push_back("");
        continue;
      }
      const ModelCell& cell = it->second[static_cast<std::size_t>(j)];
      std::string text = cell.text;
      if (cell.hypothesis) {
        text += " ‡";
        any_hypothesis = true;
      }
      if (cell.unconstrained) {
        text += " ?";
        any_unconstrained = true;
      }
      row.push_back(text);
    }
    rows.push_back(row);
  }
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], display_width(row[c]));
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) line += pad(row[c], widths[c]) + (c + 1 < row.size() ? "  " : "");
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << "  " << line << "\n";
  }
  os << "  > goal position\n";
  if (any_hypothesis) os << "  ‡ value assumed by induction hypothesis; counterexample may be spurious\n";
  if (any_unconstrained) os << "  ? unconstrained: not fixed by the solver model\n";
  return os.str();
}

}  // namespace streamverify
