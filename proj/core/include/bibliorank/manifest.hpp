#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bibliorank {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Audit record written next to every run's outputs. Contains no
/// timestamps, so identical inputs give an identical manifest.
struct RunManifest {
  std::string tool = "bibliorank";
  std::string tool_version;
  std::string command;
  std::string snapshot_path;
  std::string snapshot_sha256;
  std::string config_sha256;
  std::string config_text;
  std::string census_date;
  std::map<std::string, std::string> outputs;  // file name -> sha256
  std::vector<std::string> warnings;

  std::string to_json() const;
  static RunManifest from_json(std::string_view text);
};

}  // namespace bibliorank
