#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "bibliorank/manifest.hpp"
#include "commands.hpp"

namespace bibliorank::cli {

/// Writes `content` to dir/name and records its hash in the manifest.
void write_output(const std::filesystem::path& dir, const std::string& name, const std::string& content,
                  RunManifest& manifest);

/// Runs `body`, turning exceptions into a JSON error line and an exit code.
int guarded(std::ostream& err, const std::function<int()>& body);

}  // namespace bibliorank::cli
