#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "sp4/io/hash.hpp"
#include "sp4/io/json.hpp"

namespace sp4::clasp {

namespace fs = std::filesystem;

/// On-disk store for expanded clasps.
///
/// Layout: <dir>/<rule-table hash>/clasp-<type>-<n>.json, each file holding
/// {"schema": "sp4.clasp/1", "n", "type", "rule_hash", "websum"}. Writers
/// take an exclusive flock on <dir>/<hash>/.lock and publish by atomic
/// rename, so readers never observe partial files.
class DiskCache {
 public:
  /// Directory from SP4_CACHE_DIR, else $XDG_CACHE_HOME/sp4, else ~/.cache/sp4.
  static std::optional<fs::path> default_dir() {
    if (const char* d = std::getenv("SP4_CACHE_DIR"); d && *d) return fs::path(d);
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "sp4";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "sp4";
    return std::nullopt;
  }

  explicit DiskCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {}

  bool enabled() const { return dir_.has_value(); }
  const std::optional<fs::path>& dir() const { return dir_; }

  fs::path entry_path(const std::string& type, int n) const {
    return *dir_ / io::rule_table_hash() / ("clasp-" + type + "-" + std::to_string(n) + ".json");
  }

  /// Cached sum, or nothing when absent, unreadable or stale.
  std::optional<WebSum> load(const std::string& type, int n) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(entry_path(type, n));
    if (!in) return std::nullopt;
    try {
      io::Json j = io::Json::parse(in);
      if (j.value("schema", std::string()) != "sp4.clasp/1" || j.value("rule_hash", std::string()) != io::rule_table_hash() ||
          j.value("n", -1) != n || j.value("type", std::string()) != type)
        return std::nullopt;
      return io::websum_from_json(j.at("websum"));
    } catch (const std::exception&) {
      return std::nullopt;  // a corrupt entry is recomputed and overwritten
    }
  }

  /// Best effort: failures to write leave the computation unaffected.
  void store(const std::string& type, int n, const WebSum& s) const {
    if (!enabled()) return;
    std::error_code ec;
    const fs::path final_path = entry_path(type, n);
    fs::create_directories(final_path.parent_path(), ec);
    if (ec) return;
    const io::Json j{{"schema", "sp4.clasp/1"},
                     {"n", n},
                     {"type", type},
                     {"rule_hash", io::rule_table_hash()},
                     {"websum", io::to_json(s)}};
    Lock lock(final_path.parent_path() / ".lock");
    if (!lock.ok()) return;
    const fs::path tmp = final_path.parent_path() / (final_path.filename().string() + ".tmp" + unique_suffix());
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << j.dump() << '\n';
      if (!out) {
        fs::remove(tmp, ec);
        return;
      }
    }
    fs::rename(tmp, final_path, ec);
    if (ec) fs::remove(tmp, ec);
  }

  /// Removes every entry written under a different rule-table hash.
  /// Returns the number of files removed.
  static long gc(const fs::path& dir) {
    long removed = 0;
    std::error_code ec;
    if (!fs::exists(dir, ec)) return 0;
    if (!fs::is_directory(dir, ec)) throw CacheError(dir.string() + " is not a directory");
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_directory() || entry.path().filename() == io::rule_table_hash()) continue;
      if (!is_hash_name(entry.path().filename().string())) continue;
      for (const auto& f : fs::recursive_directory_iterator(entry.path()))
        if (f.is_regular_file() && f.path().filename() != ".lock") ++removed;
      fs::remove_all(entry.path(), ec);
      if (ec) throw CacheError("cannot remove " + entry.path().string() + ": " + ec.message());
    }
    return removed;
  }

 private:
  class Lock {
   public:
    explicit Lock(const fs::path& p) {
      fd_ = ::open(p.c_str(), O_CREAT | O_RDWR, 0644);
      if (fd_ >= 0 && ::flock(fd_, LOCK_EX) != 0) {
        ::close(fd_);
        fd_ = -1;
      }
    }
    ~Lock() {
      if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
      }
    }
    Lock(const Lock&) = delete;
    Lock& operator=(const Lock&) = delete;
    bool ok() const { return fd_ >= 0; }

   private:
    int fd_ = -1;
  };

  static bool is_hash_name(const std::string& s) {
    if (s.size() != 64) return false;
    for (char c : s)
      if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    return true;
  }

  static std::string unique_suffix() {
    static std::mutex m;
    static std::mt19937_64 rng(std::random_device{}());
    std::lock_guard<std::mutex> g(m);
    std::ostringstream os;
    os << '.' << ::getpid() << '.' << std::hex << rng();
    return os.str();
  }

  std::optional<fs::path> dir_;
};

}  // namespace sp4::clasp
