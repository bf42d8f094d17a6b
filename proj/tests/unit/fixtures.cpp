#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace bibliorank::test {

Publication pub(std::string id, std::int64_t citations, std::vector<std::string> authors,
                std::vector<std::string> categories, int year, DocType type) {
  Publication p;
  p.pub_id = std::move(id);
  p.year = year;
  p.doc_type = type;
  p.categories = std::move(categories);
  p.citations = citations;
  for (auto& a : authors) p.authors.push_back(a.empty() ? Author::external() : Author::registry(std::move(a)));
  return p;
}

Researcher researcher(std::string id, std::string sds, AcademicRank rank, std::string university,
                      std::vector<std::string> groups) {
  Researcher r;
  r.researcher_id = std::move(id);
  r.sds = std::move(sds);
  r.rank = rank;
  r.university = std::move(university);
  r.department = r.university + "-DEPT";
  r.groups = std::move(groups);
  return r;
}

CorpusSnapshot snapshot(std::vector<Publication> pubs, std::vector<Researcher> researchers) {
  return CorpusSnapshot(std::move(pubs), std::move(researchers), CensusDate::parse("2008-03-31"),
                        YearWindow{2004, 2006});
}

std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(BIBLIORANK_TEST_DATA) / name; }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("bibliorank-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace bibliorank::test
