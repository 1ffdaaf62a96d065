#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nsg/version.hpp"

namespace nsgcli {

inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// File-backed result cache. The key is (tool version, canonical command
/// string); entries store the exact output bytes plus a checksum. Stale
/// versions and corrupt entries are ignored and recomputed.
class ResultCache {
 public:
  ResultCache(std::filesystem::path dir, bool enabled)
      : dir_(std::move(dir)), enabled_(enabled) {}

  std::optional<std::string> lookup(const std::string& command) const {
    if (!enabled_) return std::nullopt;
    const auto path = entry_path(command);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
      nlohmann::json entry = nlohmann::json::parse(in);
      if (entry.at("version").get<std::string>() != nsg::kVersion)
        return std::nullopt;
      if (entry.at("command").get<std::string>() != command)
        return std::nullopt;
      const std::string payload = entry.at("payload").get<std::string>();
      if (entry.at("checksum").get<std::string>() != hex64(fnv1a(payload))) {
        std::cerr << "warning: discarding corrupt cache entry " << path
                  << "\n";
        return std::nullopt;
      }
      return payload;
    } catch (const std::exception&) {
      std::cerr << "warning: discarding unreadable cache entry " << path
                << "\n";
      return std::nullopt;
    }
  }

  void store(const std::string& command, const std::string& payload) const {
    if (!enabled_) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;  // cache is best effort
    nlohmann::ordered_json entry;
    entry["schema"] = "nsg.cache/1";
    entry["version"] = nsg::kVersion;
    entry["command"] = command;
    entry["checksum"] = hex64(fnv1a(payload));
    entry["payload"] = payload;
    std::ofstream out(entry_path(command), std::ios::trunc);
    out << entry.dump(2) << "\n";
  }

 private:
  std::filesystem::path entry_path(const std::string& command) const {
    return dir_ / (hex64(fnv1a(std::string(nsg::kVersion) + "\x1f" + command)) +
                   ".json");
  }

  std::filesystem::path dir_;
  bool enabled_;
};

}  // namespace nsgcli
