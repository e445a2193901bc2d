#include "fieldscope/manifest.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>

#include "fieldscope/delimited.hpp"
#include "fieldscope/io.hpp"
#include "json.hpp"

namespace fieldscope {

void RunManifest::add_input(const std::filesystem::path& path) {
  input_digests.emplace_back(path.string(), io::sha256_file(path));
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool_version"] = tool_version;
  j["command_line"] = command_line;
  j["config_hash"] = config_hash;
  auto inputs = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : input_digests) inputs.push_back({{"path", path}, {"sha256", digest}});
  j["inputs"] = inputs;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  j["started"] = started;
  j["finished"] = finished;
  return j.dump(2) + "\n";
}

std::string utc_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    t = static_cast<std::time_t>(delimited::parse_integer(epoch));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace fieldscope
