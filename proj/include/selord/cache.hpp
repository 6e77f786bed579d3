#pragma once

// Persistent class-group cache: one JSON file mapping discriminants to their
// reduced forms, guarded by an exclusive lock on "<path>.lock". Entries are
// checked on load; an invalid or unreadable entry is recomputed and replaced.

#include <filesystem>
#include <memory>

#include "selord/classgroup.hpp"

namespace selord {

struct CacheOptions {
  bool enabled = true;
  std::filesystem::path path;  // empty: default_cache_path()
};

// $SELORD_CACHE, else $XDG_CACHE_HOME/selord/classgroups.json, else
// $HOME/.cache/selord/classgroups.json.
std::filesystem::path default_cache_path();

std::shared_ptr<const ClassGroup> load_class_group(const Integer& d, const CacheOptions& options);

}  // namespace selord
