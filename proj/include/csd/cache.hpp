#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "csd/report.hpp"

namespace csd {

/// Advisory on-disk cache of derived result payloads, keyed by
/// (schema_version, canonical spec, artifact kind). Entries from other
/// schema versions are ignored. Writes go through a temp file and a rename
/// so concurrent invocations never observe partial entries.
class ResultCache {
 public:
  ResultCache(std::filesystem::path dir, int schema_version = kSchemaVersion)
      : dir_(std::move(dir)), version_(schema_version) {
    std::filesystem::create_directories(dir_);
  }

  std::optional<Json> load(const std::string& spec, const std::string& kind) const {
    std::ifstream in(path_for(spec, kind));
    if (!in) return std::nullopt;
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    if (!j.contains("schema_version") || j["schema_version"] != version_) return std::nullopt;
    if (!j.contains("spec") || j["spec"] != spec) return std::nullopt;
    if (!j.contains("kind") || j["kind"] != kind) return std::nullopt;
    if (!j.contains("results")) return std::nullopt;
    return j["results"];
  }

  void store(const std::string& spec, const std::string& kind, const Json& results) const {
    Json j;
    j["schema_version"] = version_;
    j["spec"] = spec;
    j["kind"] = kind;
    j["results"] = results;
    std::filesystem::path target = path_for(spec, kind);
    std::filesystem::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
      std::ofstream out(tmp);
      out << j.dump(2) << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

 private:
  static uint64_t fnv64(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return h;
  }

  std::filesystem::path path_for(const std::string& spec, const std::string& kind) const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv64(kind + "|" + spec)));
    return dir_ / ("v" + std::to_string(version_) + "-" + buf + ".json");
  }

  std::filesystem::path dir_;
  int version_;
};

}  // namespace csd
