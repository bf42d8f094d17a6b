#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "bibliorank/corpus.hpp"

namespace bibliorank::test {

/// Author ids in position order; "" stands for an external co-author.
Publication pub(std::string id, std::int64_t citations, std::vector<std::string> authors,
                std::vector<std::string> categories = {"CAT"}, int year = 2005,
                DocType type = DocType::article);

Researcher researcher(std::string id, std::string sds = "BIO/11", AcademicRank rank = AcademicRank::full,
                      std::string university = "U01", std::vector<std::string> groups = {});

CorpusSnapshot snapshot(std::vector<Publication> pubs, std::vector<Researcher> researchers);

std::filesystem::path data_path(const std::string& name);

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);

}  // namespace bibliorank::test
