#include "bibliorank/manifest.hpp"

#include <array>
#include <fstream>
#include <memory>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "bibliorank/error.hpp"

namespace bibliorank {

namespace {

struct DigestContext {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};

  DigestContext() {
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorCode::internal_consistency, "cannot initialise SHA-256");
    }
  }
  void update(const void* data, std::size_t size) { EVP_DigestUpdate(ctx.get(), data, size); }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
    std::string out;
    for (unsigned int i = 0; i < length; ++i) out += fmt::format("{:02x}", digest[i]);
    return out;
  }
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  DigestContext digest;
  digest.update(bytes.data(), bytes.size());
  return digest.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, fmt::format("cannot open '{}'", path.string()));
  DigestContext digest;
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    digest.update(buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  return digest.hex();
}

std::string RunManifest::to_json() const {
  nlohmann::json doc = {{"tool", tool},
                        {"tool_version", tool_version},
                        {"command", command},
                        {"snapshot", {{"path", snapshot_path}, {"sha256", snapshot_sha256}}},
                        {"config", {{"sha256", config_sha256}, {"text", config_text}}},
                        {"census_date", census_date},
                        {"outputs", outputs},
                        {"warnings", warnings}};
  return doc.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    RunManifest m;
    m.tool = doc.at("tool").get<std::string>();
    m.tool_version = doc.at("tool_version").get<std::string>();
    m.command = doc.at("command").get<std::string>();
    m.snapshot_path = doc.at("snapshot").at("path").get<std::string>();
    m.snapshot_sha256 = doc.at("snapshot").at("sha256").get<std::string>();
    m.config_sha256 = doc.at("config").at("sha256").get<std::string>();
    m.config_text = doc.at("config").at("text").get<std::string>();
    m.census_date = doc.at("census_date").get<std::string>();
    m.outputs = doc.at("outputs").get<std::map<std::string, std::string>>();
    m.warnings = doc.at("warnings").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::format, fmt::format("malformed run manifest: {}", e.what()));
  }
}

}  // namespace bibliorank
