#include "eisenprod/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "eisenprod/errors.hpp"

namespace eisenprod {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kHeader = "eisenprod-cache 1\n";

class DirLock {
 public:
  DirLock(const fs::path& dir, bool exclusive) {
    fd_ = ::open((dir / ".lock").c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ >= 0) ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

bool safe_key(const std::string& key) {
  if (key.empty() || key[0] == '.') return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')) return false;
  }
  return true;
}

}  // namespace

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

fs::path Cache::default_dir() {
  if (const char* env = std::getenv("EISENPROD_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "eisenprod";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "eisenprod";
  return fs::temp_directory_path() / "eisenprod-cache";
}

std::string Cache::key(std::string_view mode_tag, std::string_view step, std::string_view input_digest) {
  std::string k;
  k.append(mode_tag).append(".").append(step).append(".lpf.").append(input_digest);
  return k;
}

fs::path Cache::path_for(const std::string& key) const {
  if (!safe_key(key)) throw DomainError("invalid cache key '" + key + "'");
  return dir_ / (key + ".txt");
}

bool Cache::contains(const std::string& key) const {
  DirLock lock(dir_, false);
  return fs::exists(path_for(key));
}

std::optional<std::string> Cache::load_text(const std::string& key) const {
  const fs::path p = path_for(key);
  DirLock lock(dir_, false);
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (text.compare(0, kHeader.size(), kHeader) != 0) return std::nullopt;
  return text.substr(kHeader.size());
}

void Cache::store_text(const std::string& key, const std::string& text) const {
  const fs::path p = path_for(key);
  fs::path tmp = p;
  tmp += ".tmp." + std::to_string(::getpid());
  DirLock lock(dir_, true);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << kHeader << text;
    if (!out) throw Error("short write to cache file " + tmp.string());
  }
  fs::rename(tmp, p);
}

std::optional<Poly> Cache::load(const std::string& key, const RegistryPtr& reg) const {
  auto text = load_text(key);
  if (!text) return std::nullopt;
  return parse_poly(reg, *text);
}

void Cache::store(const std::string& key, const Poly& p) const { store_text(key, to_string(p)); }

Cache::GcReport Cache::gc(std::optional<std::chrono::hours> max_age) const {
  GcReport rep;
  DirLock lock(dir_, true);
  const auto now = fs::file_time_type::clock::now();
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    const std::string name = p.filename().string();
    if (name == ".lock") continue;
    bool drop = name.find(".tmp.") != std::string::npos;
    if (!drop) {
      std::ifstream in(p, std::ios::binary);
      std::string head(kHeader.size(), '\0');
      in.read(head.data(), static_cast<std::streamsize>(head.size()));
      drop = head != kHeader;
    }
    if (!drop && max_age) drop = now - entry.last_write_time() > *max_age;
    if (drop) {
      rep.bytes_freed += entry.file_size();
      fs::remove(p);
      ++rep.removed;
    } else {
      ++rep.kept;
    }
  }
  return rep;
}

}  // namespace eisenprod
