#pragma once

// On-disk store for intermediate polynomials.
//
// Entries are canonical polynomial text files named by a key built from
// (mode, k, step, split rule, input digest). Writes go through a temp
// file and a rename; every access holds an advisory lock on the
// directory's lock file.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "eisenprod/poly.hpp"

namespace eisenprod {

class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  /// $EISENPROD_CACHE, else $XDG_CACHE_HOME/eisenprod, else ~/.cache/eisenprod.
  static std::filesystem::path default_dir();

  /// "<mode_tag>.<step>.lpf.<input_digest>"; lpf is the split rule.
  static std::string key(std::string_view mode_tag, std::string_view step, std::string_view input_digest);

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<Poly> load(const std::string& key, const RegistryPtr& reg) const;
  void store(const std::string& key, const Poly& p) const;

  std::optional<std::string> load_text(const std::string& key) const;
  void store_text(const std::string& key, const std::string& text) const;

  bool contains(const std::string& key) const;

  struct GcReport {
    std::size_t removed = 0;
    std::uintmax_t bytes_freed = 0;
    std::size_t kept = 0;
  };
  /// Drops stale temp files, entries with a foreign format header, and
  /// (when max_age is set) entries older than max_age.
  GcReport gc(std::optional<std::chrono::hours> max_age = std::nullopt) const;

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
};

}  // namespace eisenprod
