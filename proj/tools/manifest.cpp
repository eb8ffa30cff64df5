#include "manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>

#include <json.hpp>
#include <openssl/evp.h>

#include "cli.hpp"
#include "polar/core/error.hpp"
#include "polar/core/jsonl.hpp"

namespace polar::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_manifest(const RunManifest& manifest, const std::filesystem::path& out_dir) {
  nlohmann::ordered_json doc;
  doc["command_line"] = manifest.command_line;
  doc["seed"] = manifest.seed;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const auto& p : manifest.inputs) {
    inputs.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
  }
  doc["inputs"] = std::move(inputs);
  doc["outputs"] = manifest.outputs;
  doc["counts"] = manifest.counts;
  doc["tool_version"] = kToolVersion;
  doc["timestamp"] = utc_timestamp();
  auto out = open_for_writing(out_dir / "manifest.json");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing manifest");
}

}  // namespace polar::cli
