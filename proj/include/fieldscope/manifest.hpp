#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fieldscope {

// Written next to every CLI output as `<output>.manifest.json`.
// Timestamps honor SOURCE_DATE_EPOCH when it is set.
struct RunManifest {
  std::vector<std::string> command_line;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path, sha256
  std::optional<std::uint64_t> seed;
  std::string tool_version = FIELDSCOPE_VERSION;
  std::string started;
  std::string finished;

  void add_input(const std::filesystem::path& path);
  std::string to_json() const;
};

// ISO-8601 UTC of now, or of SOURCE_DATE_EPOCH.
std::string utc_timestamp();

}  // namespace fieldscope
