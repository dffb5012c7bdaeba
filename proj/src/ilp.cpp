#include "mtcut/ilp.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fcntl.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

extern char** environ;

namespace mtcut::ilp {

namespace fs = std::filesystem;

std::string IlpModel::xName(std::size_t pos, std::size_t block) const {
  return "x_" + std::to_string(pos) + "_" + std::to_string(block);
}

std::string IlpModel::zName(std::size_t edge) const { return "z_" + std::to_string(edge); }

IlpModel buildModel(const Problem& p) {
  const auto& g = p.graph();
  if (g.numEdges() == 0) throw InvalidInput("ILP model needs at least one edge");
  if (p.terminals().size() < 2) throw InvalidInput("ILP model needs two active terminals");
  IlpModel m;
  m.slot_count = g.slotCount();
  m.offset = p.deletedWeight();
  m.retired = p.retiredTerminals();
  std::vector<VertexId> pos(g.slotCount(), kInvalidVertex);
  for (const VertexId v : g.liveVertices()) {
    pos[v] = static_cast<VertexId>(m.vertices.size());
    m.vertices.push_back(v);
  }
  for (const auto& t : p.terminals()) {
    m.block_labels.push_back(t.index);
    m.terminal_pos.push_back(pos[t.vertex]);
  }
  for (const auto& e : g.edges()) m.edges.push_back({pos[e.u], pos[e.v], e.weight});
  return m;
}

namespace {

// Appends terms to `out`, breaking lines before they grow past ~72 columns.
class LineWriter {
 public:
  explicit LineWriter(std::ostringstream& out) : out_(out) {}
  void start(const std::string& head) {
    out_ << ' ' << head;
    width_ = head.size() + 1;
  }
  void term(const std::string& t) {
    if (width_ + t.size() + 1 > 72) {
      out_ << "\n   ";
      width_ = 3;
    }
    out_ << ' ' << t;
    width_ += t.size() + 1;
  }
  void end() {
    out_ << '\n';
    width_ = 0;
  }

 private:
  std::ostringstream& out_;
  std::size_t width_ = 0;
};

}  // namespace

std::string emitStandardForm(const IlpModel& m) {
  std::ostringstream out;
  LineWriter line(out);
  const std::size_t k = m.blocks();
  out << "\\ multiterminal cut: " << m.vertices.size() << " vertices, " << m.edges.size() << " edges, " << k
      << " blocks, offset " << m.offset << "\n";
  out << "Minimize\n";
  line.start("obj:");
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    line.term((e == 0 ? "" : "+ ") + std::to_string(m.edges[e].weight) + " " + m.zName(e));
  }
  line.end();

  out << "Subject To\n";
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    line.start("a_" + std::to_string(v) + ":");
    for (std::size_t b = 0; b < k; ++b) line.term((b == 0 ? "" : "+ ") + m.xName(v, b));
    line.term("= 1");
    line.end();
  }
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const auto& edge = m.edges[e];
    for (std::size_t b = 0; b < k; ++b) {
      const std::string tag = std::to_string(e) + "_" + std::to_string(b);
      out << " p_" << tag << ": " << m.zName(e) << " - " << m.xName(edge.u, b) << " + " << m.xName(edge.v, b)
          << " >= 0\n";
      out << " n_" << tag << ": " << m.zName(e) << " + " << m.xName(edge.u, b) << " - " << m.xName(edge.v, b)
          << " >= 0\n";
    }
  }

  out << "Bounds\n";
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t c = 0; c < k; ++c) {
      out << ' ' << m.xName(m.terminal_pos[b], c) << " = " << (b == c ? 1 : 0) << '\n';
    }
  }

  out << "Binary\n";
  line.start("");
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    for (std::size_t b = 0; b < k; ++b) line.term(m.xName(v, b));
  }
  for (std::size_t e = 0; e < m.edges.size(); ++e) line.term(m.zName(e));
  line.end();
  out << "End\n";
  return out.str();
}

VariableValues encode(const IlpModel& m, const KernelLabels& labels) {
  VariableValues values;
  std::vector<std::size_t> block_of(m.vertices.size(), 0);
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const BlockId label = labels[m.vertices[v]];
    for (std::size_t b = 0; b < m.blocks(); ++b) {
      values[m.xName(v, b)] = m.block_labels[b] == label ? 1.0 : 0.0;
      if (m.block_labels[b] == label) block_of[v] = b;
    }
  }
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    values[m.zName(e)] = block_of[m.edges[e].u] != block_of[m.edges[e].v] ? 1.0 : 0.0;
  }
  return values;
}

KernelLabels decode(const IlpModel& m, const VariableValues& values) {
  KernelLabels labels(m.slot_count, kNoBlock);
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    int ones = 0;
    for (std::size_t b = 0; b < m.blocks(); ++b) {
      const auto it = values.find(m.xName(v, b));
      if (it != values.end() && it->second > 0.5) {
        ++ones;
        labels[m.vertices[v]] = m.block_labels[b];
      }
    }
    if (ones != 1) {
      throw InvalidInput("vertex " + std::to_string(v) + " has " + std::to_string(ones) + " blocks in the solution");
    }
  }
  for (const auto& t : m.retired) labels[t.vertex] = t.index;
  return labels;
}

SolutionFile parseSolutionFile(const std::string& text) {
  SolutionFile out;
  std::istringstream in(text);
  std::string row;
  std::size_t line_no = 0;
  while (std::getline(in, row)) {
    ++line_no;
    if (row.empty()) continue;
    if (row[0] == '#') {
      const auto colon = row.find("Status:");
      if (colon != std::string::npos) {
        std::istringstream status(row.substr(colon + 7));
        status >> out.status;
      }
      continue;
    }
    std::istringstream fields(row);
    std::string name;
    double value = 0;
    if (!(fields >> name >> value)) throw ParseError(line_no, "expected 'name value'");
    out.values[name] = value;
  }
  return out;
}

namespace {

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  for (std::size_t at = text.find(key); at != std::string::npos; at = text.find(key, at + value.size())) {
    text.replace(at, key.size(), value);
  }
  return text;
}

std::string quoted(const std::string& path) { return "'" + substitute(path, "'", "'\\''") + "'"; }

class TempDir {
 public:
  explicit TempDir(const std::string& parent) {
    const fs::path base = parent.empty() ? fs::temp_directory_path() : fs::path(parent);
    std::string pattern = (base / "mtcut-ilp-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) {
      throw Error("cannot create ILP work directory: " + std::string(std::strerror(errno)));
    }
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

enum class RunResult { kExited, kKilled, kSpawnFailed };

RunResult runWithTimeout(const std::string& command, const fs::path& log, double timeout_seconds, int& exit_code) {
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::string sh = "/bin/sh";
  std::string dash_c = "-c";
  std::string cmd = command;
  char* argv[] = {sh.data(), dash_c.data(), cmd.data(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  if (rc != 0) return RunResult::kSpawnFailed;

  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
  auto pause = std::chrono::milliseconds(1);
  while (true) {
    int status = 0;
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) {
      exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
      return RunResult::kExited;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
      return RunResult::kKilled;
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::milliseconds(20));
  }
}

std::string readFile(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

IlpOutcome solveExternal(const IlpModel& m, const IlpOptions& options, double timeout_seconds) {
  IlpOutcome out;
  if (options.command.empty()) {
    out.diagnostic = "no MILP solver command configured";
    return out;
  }
  if (!(timeout_seconds > 0)) {
    out.status = IlpStatus::kTimedOut;
    out.diagnostic = "non-positive time limit";
    return out;
  }

  const TempDir dir(options.work_dir);
  const fs::path lp = dir.path() / "model.lp";
  const fs::path sol = dir.path() / "model.sol";
  {
    std::ofstream f(lp);
    f << emitStandardForm(m);
  }
  std::ostringstream timeout_text;
  timeout_text << timeout_seconds;
  std::string command = substitute(options.command, "{lp}", quoted(lp.string()));
  command = substitute(command, "{sol}", quoted(sol.string()));
  command = substitute(command, "{timeout}", timeout_text.str());

  int exit_code = 0;
  // A little slack lets the solver stop on its own before the hard kill.
  switch (runWithTimeout(command, dir.path() / "solver.log", timeout_seconds + 1.0, exit_code)) {
    case RunResult::kSpawnFailed:
      out.diagnostic = "cannot start /bin/sh";
      return out;
    case RunResult::kKilled:
      out.status = IlpStatus::kTimedOut;
      out.diagnostic = "solver killed at the time limit";
      return out;
    case RunResult::kExited:
      break;
  }
  if (exit_code != 0) {
    out.diagnostic =
        "solver exited with status " + std::to_string(exit_code) + ": " + readFile(dir.path() / "solver.log");
    return out;
  }
  if (!fs::exists(sol)) {
    out.diagnostic = "solver wrote no solution file";
    return out;
  }
  try {
    const auto parsed = parseSolutionFile(readFile(sol));
    if (parsed.status != "optimal") {
      out.status = parsed.status.find("time") != std::string::npos ? IlpStatus::kTimedOut : IlpStatus::kUnavailable;
      out.diagnostic = "solver status '" + parsed.status + "'";
      return out;
    }
    out.labels = decode(m, parsed.values);
  } catch (const Error& e) {
    out.diagnostic = std::string("malformed solution: ") + e.what();
    return out;
  }
  EdgeWeight cut = 0;
  for (const auto& e : m.edges) {
    if (out.labels[m.vertices[e.u]] != out.labels[m.vertices[e.v]]) cut += e.weight;
  }
  out.value = cut + m.offset;
  out.status = IlpStatus::kSolved;
  return out;
}

}  // namespace mtcut::ilp
