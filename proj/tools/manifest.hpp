#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace polar::cli {

// Written as manifest.json into every output directory.
struct RunManifest {
  std::string command_line;
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::string> outputs;
  std::map<std::string, long long> counts;
};

std::string sha256_file(const std::filesystem::path& path);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& out_dir);

}  // namespace polar::cli
