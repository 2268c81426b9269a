#pragma once
// External coefficient backend: a shell command speaking a line protocol.
//
// Protocol: for each request the parent writes one line "n m\n"; the child
// answers with one line containing the residue of a(n) mod m (any integer is
// accepted and reduced).  One child serves many requests.  Results are cached
// on disk in an append-only file per (command, modulus) pair, listed in a
// manifest, so long searches are resumable and cache hits never spawn.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>

#include "etaq/families.hpp"

namespace etaq {

class SubprocessOracle final : public CoefficientOracle {
 public:
  SubprocessOracle(std::string command, u64 m, std::string cache_dir = "oracle-cache",
                   int timeout_ms = 120000)
      : command_(std::move(command)), m_(m), cache_dir_(std::move(cache_dir)),
        timeout_ms_(timeout_ms) {
    if (m_ < 2) throw std::invalid_argument("subprocess oracle: modulus must be >= 2");
    load_cache();
  }

  ~SubprocessOracle() override { stop_child(); }
  SubprocessOracle(const SubprocessOracle&) = delete;
  SubprocessOracle& operator=(const SubprocessOracle&) = delete;

  u64 modulus() const override { return m_; }
  i64 max_index() const override { return std::numeric_limits<i64>::max(); }

  u64 fetch(i64 n) const override {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    u64 r = ask_child(n);
    cache_.emplace(n, r);
    if (append_.is_open()) {
      append_ << n << ' ' << r << '\n';
      append_.flush();
    }
    return r;
  }

  // Exposed for tests: number of residues already known without spawning.
  size_t cached_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.size();
  }

 private:
  static u64 fnv1a(const std::string& s) {
    u64 h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

  std::string cache_file_path() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(command_));
    return cache_dir_ + "/" + buf + "-m" + std::to_string(m_) + ".cache";
  }

  void load_cache() {
    if (cache_dir_.empty()) return;
    ::mkdir(cache_dir_.c_str(), 0755);  // best effort; may already exist
    std::string path = cache_file_path();
    {
      std::ifstream in(path);
      i64 n;
      u64 r;
      while (in >> n >> r) cache_.emplace(n, r % m_);
    }
    // Register this (command, modulus) pair in the manifest once.
    std::string manifest = cache_dir_ + "/manifest.txt";
    std::string entry = path + "\t" + std::to_string(m_) + "\t" + command_;
    bool present = false;
    {
      std::ifstream in(manifest);
      std::string line;
      while (std::getline(in, line))
        if (line == entry) { present = true; break; }
    }
    if (!present) {
      std::ofstream out(manifest, std::ios::app);
      out << entry << '\n';
    }
    append_.open(path, std::ios::app);
  }

  void fail(const std::string& what) const {
    stop_child();
    throw OracleError("subprocess oracle (" + command_ + "): " + what);
  }

  void start_child() const {
    int to_child[2], from_child[2];
    if (pipe(to_child) || pipe(from_child)) fail("pipe() failed");
    pid_t pid = fork();
    if (pid < 0) fail("fork() failed");
    if (pid == 0) {
      dup2(to_child[0], 0);
      dup2(from_child[1], 1);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command_.c_str(), (char*)nullptr);
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    pid_ = pid;
    in_fd_ = from_child[0];
    out_fd_ = to_child[1];
  }

  void stop_child() const {
    if (pid_ > 0) {
      close(out_fd_);
      close(in_fd_);
      kill(pid_, SIGTERM);
      int status;
      waitpid(pid_, &status, 0);
      pid_ = -1;
      in_fd_ = out_fd_ = -1;
    }
  }

  // Reads one line from the child, honoring the timeout.
  std::string read_line() const {
    std::string line;
    for (;;) {
      struct pollfd pfd{in_fd_, POLLIN, 0};
      int pr = poll(&pfd, 1, timeout_ms_);
      if (pr == 0) fail("timeout waiting for reply");
      if (pr < 0) fail(std::string("poll: ") + strerror(errno));
      char c;
      ssize_t rd = read(in_fd_, &c, 1);
      if (rd == 0) {
        int status = 0;
        waitpid(pid_, &status, 0);
        pid_ = -1;
        close(in_fd_);
        close(out_fd_);
        in_fd_ = out_fd_ = -1;
        if (WIFEXITED(status) && WEXITSTATUS(status) != 0)
          throw OracleError("subprocess oracle (" + command_ + "): exited with status " +
                            std::to_string(WEXITSTATUS(status)));
        throw OracleError("subprocess oracle (" + command_ + "): protocol error, unexpected EOF");
      }
      if (rd < 0) fail(std::string("read: ") + strerror(errno));
      if (c == '\n') return line;
      line.push_back(c);
    }
  }

  u64 ask_child(i64 n) const {
    if (pid_ < 0) start_child();
    std::string req = std::to_string(n) + " " + std::to_string(m_) + "\n";
    const char* p = req.data();
    size_t left = req.size();
    while (left) {
      ssize_t w = write(out_fd_, p, left);
      if (w <= 0) fail(std::string("write: ") + (w < 0 ? strerror(errno) : "pipe closed"));
      p += w;
      left -= (size_t)w;
    }
    std::string line = read_line();
    errno = 0;
    char* end = nullptr;
    long long v = strtoll(line.c_str(), &end, 10);
    while (end && (*end == ' ' || *end == '\r' || *end == '\t')) ++end;
    if (line.empty() || errno || !end || *end != '\0')
      fail("protocol error, non-integer reply: \"" + line + "\"");
    long long r = v % (long long)m_;
    if (r < 0) r += (long long)m_;
    return (u64)r;
  }

  std::string command_;
  u64 m_;
  std::string cache_dir_;
  int timeout_ms_;
  mutable std::mutex mu_;
  mutable std::unordered_map<i64, u64> cache_;
  mutable std::ofstream append_;
  mutable pid_t pid_ = -1;
  mutable int in_fd_ = -1, out_fd_ = -1;
};

}  // namespace etaq
