#include "selord/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>

#include "json.hpp"

namespace selord {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class FileLock {
 public:
  explicit FileLock(const fs::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ >= 0 && ::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  bool held() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

json read_store(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return json::object();
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("groups") || !doc["groups"].is_object())
    return json{{"version", 1}, {"groups", json::object()}};
  return doc;
}

void write_store(const fs::path& path, const json& doc) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump() << '\n';
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
}

json encode(const ClassGroup& g) {
  json forms = json::array();
  for (const auto& f : g.elements()) forms.push_back({f.a.get_str(), f.b.get_str(), f.c.get_str()});
  return forms;
}

ClassGroup decode(const Integer& d, const json& forms) {
  std::vector<QuadForm> out;
  for (const auto& f : forms) {
    if (!f.is_array() || f.size() != 3) throw std::runtime_error("class group data: bad form");
    out.push_back({Integer(f[0].get<std::string>()), Integer(f[1].get<std::string>()),
                   Integer(f[2].get<std::string>())});
  }
  return ClassGroup::from_forms(d, std::move(out));
}

}  // namespace

fs::path default_cache_path() {
  if (const char* p = std::getenv("SELORD_CACHE"); p && *p) return p;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "selord" / "classgroups.json";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "selord" / "classgroups.json";
  return fs::temp_directory_path() / "selord-classgroups.json";
}

std::shared_ptr<const ClassGroup> load_class_group(const Integer& d, const CacheOptions& options) {
  if (!options.enabled) return std::make_shared<const ClassGroup>(d);
  const fs::path path = options.path.empty() ? default_cache_path() : options.path;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path lock_path = path;
  lock_path += ".lock";
  FileLock lock(lock_path);
  if (!lock.held()) return std::make_shared<const ClassGroup>(d);

  json doc = read_store(path);
  if (!doc.contains("groups")) doc = json{{"version", 1}, {"groups", json::object()}};
  const std::string key = d.get_str();
  if (doc["groups"].contains(key)) {
    try {
      return std::make_shared<const ClassGroup>(decode(d, doc["groups"][key]));
    } catch (const std::exception&) {
      // Fall through and rebuild the entry.
    }
  }
  auto g = std::make_shared<const ClassGroup>(d);
  doc["groups"][key] = encode(*g);
  write_store(path, doc);
  return g;
}

}  // namespace selord
