#include "bibliorank/ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "bibliorank/csv.hpp"
#include "bibliorank/error.hpp"

namespace bibliorank {

using nlohmann::json;

namespace {

[[noreturn]] void fail_line(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::parse, message, line);
}

const json& require_key(const json& object, const char* key, std::size_t line) {
  auto it = object.find(key);
  if (it == object.end()) fail_line(line, fmt::format("missing key '{}'", key));
  return *it;
}

std::int64_t require_integer(const json& value, const char* key, std::size_t line) {
  if (!value.is_number_integer()) fail_line(line, fmt::format("'{}' must be an integer", key));
  return value.get<std::int64_t>();
}

std::string require_string(const json& value, const char* key, std::size_t line) {
  if (!value.is_string()) fail_line(line, fmt::format("'{}' must be a string", key));
  return value.get<std::string>();
}

std::vector<Author> parse_authors(const json& value, std::size_t line) {
  if (!value.is_array() || value.empty()) fail_line(line, "'authors' must be a non-empty array");
  std::vector<std::pair<std::int64_t, Author>> slots;
  slots.reserve(value.size());
  for (const auto& entry : value) {
    if (!entry.is_object()) fail_line(line, "author entries must be objects");
    for (const auto& [key, _] : entry.items()) {
      if (key != "researcher_id" && key != "external" && key != "position") {
        fail_line(line, fmt::format("unexpected author key '{}'", key));
      }
    }
    const json& external = require_key(entry, "external", line);
    if (!external.is_boolean()) fail_line(line, "'external' must be a boolean");
    const std::int64_t position = require_integer(require_key(entry, "position", line), "position", line);
    const json& id = require_key(entry, "researcher_id", line);
    if (external.get<bool>()) {
      if (!id.is_null()) fail_line(line, "external authors must have a null researcher_id");
      slots.emplace_back(position, Author::external());
    } else {
      std::string rid = require_string(id, "researcher_id", line);
      if (rid.empty()) fail_line(line, "researcher_id must not be empty");
      slots.emplace_back(position, Author::registry(std::move(rid)));
    }
  }
  std::stable_sort(slots.begin(), slots.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Author> authors;
  authors.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].first != static_cast<std::int64_t>(i + 1)) {
      fail_line(line, fmt::format("author positions must be 1..{} without gaps", slots.size()));
    }
    authors.push_back(std::move(slots[i].second));
  }
  return authors;
}

constexpr std::array kPublicationKeys = {"pub_id", "year", "doc_type", "categories", "citations", "authors"};

}  // namespace

std::vector<Publication> parse_publications(std::istream& in, const IngestOptions& options,
                                            std::vector<std::string>& warnings) {
  std::vector<Publication> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      fail_line(line, fmt::format("malformed JSON: {}", e.what()));
    }
    if (!record.is_object()) fail_line(line, "record must be a JSON object");
    for (const auto& [key, _] : record.items()) {
      if (std::find(kPublicationKeys.begin(), kPublicationKeys.end(), key) == kPublicationKeys.end()) {
        fail_line(line, fmt::format("unexpected key '{}'", key));
      }
    }

    Publication pub;
    pub.pub_id = require_string(require_key(record, "pub_id", line), "pub_id", line);
    if (pub.pub_id.empty()) fail_line(line, "pub_id must not be empty");
    const auto year = require_integer(require_key(record, "year", line), "year", line);
    if (year < 0 || year > 9999) fail_line(line, fmt::format("year {} out of range", year));
    pub.year = static_cast<int>(year);

    const std::string type = require_string(require_key(record, "doc_type", line), "doc_type", line);
    auto doc_type = parse_doc_type(type);
    if (!doc_type) {
      if (options.skip_unknown_types) {
        warnings.push_back(fmt::format("line {}: skipped '{}' with doc_type '{}'", line, pub.pub_id, type));
        continue;
      }
      fail_line(line, fmt::format("unknown doc_type '{}'", type));
    }
    pub.doc_type = *doc_type;

    const json& categories = require_key(record, "categories", line);
    if (!categories.is_array()) fail_line(line, "'categories' must be an array");
    for (const auto& c : categories) pub.categories.push_back(require_string(c, "categories", line));
    if (pub.categories.empty()) fail_line(line, "'categories' must not be empty");

    pub.citations = require_integer(require_key(record, "citations", line), "citations", line);
    if (pub.citations < 0) fail_line(line, "'citations' must be non-negative");

    pub.authors = parse_authors(require_key(record, "authors", line), line);
    out.push_back(std::move(pub));
  }
  return out;
}

std::vector<Researcher> parse_researchers(std::istream& in) {
  std::vector<Researcher> out;
  std::string text;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (!header_seen) {
      if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);
      if (text != kResearcherCsvHeader) {
        fail_line(line, fmt::format("expected header '{}'", kResearcherCsvHeader));
      }
      header_seen = true;
      continue;
    }
    if (text.empty()) continue;
    auto fields = csv::split_record(text);
    if (!fields) fail_line(line, "unterminated quoted field");
    if (fields->size() != 6) {
      fail_line(line, fmt::format("expected 6 columns, found {}", fields->size()));
    }
    Researcher r;
    r.researcher_id = (*fields)[0];
    if (r.researcher_id.empty()) fail_line(line, "researcher_id must not be empty");
    r.sds = (*fields)[1];
    if (r.sds.empty()) fail_line(line, fmt::format("researcher '{}' has no sds", r.researcher_id));
    auto rank = parse_academic_rank((*fields)[2]);
    if (!rank) {
      fail_line(line, fmt::format("unknown rank '{}' for researcher '{}'", (*fields)[2], r.researcher_id));
    }
    r.rank = *rank;
    r.university = (*fields)[3];
    if (!(*fields)[4].empty()) r.department = (*fields)[4];
    std::string_view groups = (*fields)[5];
    while (!groups.empty()) {
      const auto cut = groups.find(';');
      std::string_view tag = groups.substr(0, cut);
      if (!tag.empty()) r.groups.emplace_back(tag);
      if (cut == std::string_view::npos) break;
      groups.remove_prefix(cut + 1);
    }
    out.push_back(std::move(r));
  }
  if (!header_seen) fail_line(line + 1, "missing header row");
  return out;
}

LoadResult load_snapshot(const std::filesystem::path& publications_path,
                         const std::filesystem::path& researchers_path, const IngestOptions& options) {
  std::ifstream pubs(publications_path);
  if (!pubs) throw Error(ErrorCode::io, fmt::format("cannot open '{}'", publications_path.string()));
  std::ifstream registry(researchers_path);
  if (!registry) throw Error(ErrorCode::io, fmt::format("cannot open '{}'", researchers_path.string()));

  LoadResult result;
  auto publications = parse_publications(pubs, options, result.warnings);
  auto researchers = parse_researchers(registry);
  result.snapshot = CorpusSnapshot(std::move(publications), std::move(researchers),
                                   options.census_date, options.window);
  result.report = validate_snapshot(result.snapshot, options.validation);
  if (!result.report.ok() && options.fatal_violations) {
    const auto& first = result.report.violations.front();
    throw Error(ErrorCode::validation,
                fmt::format("{} validation violation(s); first: {} on '{}': {}",
                            result.report.violations.size(), to_string(first.kind), first.subject,
                            first.detail));
  }
  return result;
}

std::string serialize_snapshot(const CorpusSnapshot& snapshot) {
  json doc;
  doc["format"] = kSnapshotFormatName;
  doc["version"] = kSnapshotFormatVersion;
  doc["census_date"] = snapshot.census_date().iso();
  doc["window"] = {{"start", snapshot.window().start}, {"end", snapshot.window().end}};

  json researchers = json::array();
  for (const auto& r : snapshot.researchers()) {
    researchers.push_back({{"researcher_id", r.researcher_id},
                           {"sds", r.sds},
                           {"rank", to_string(r.rank)},
                           {"university", r.university},
                           {"department", r.department ? json(*r.department) : json(nullptr)},
                           {"groups", r.groups}});
  }
  doc["researchers"] = std::move(researchers);

  json publications = json::array();
  for (const auto& p : snapshot.publications()) {
    json authors = json::array();
    for (const auto& a : p.authors) authors.push_back(a.researcher_id ? json(*a.researcher_id) : json(nullptr));
    publications.push_back({{"pub_id", p.pub_id},
                            {"year", p.year},
                            {"doc_type", to_string(p.doc_type)},
                            {"categories", p.categories},
                            {"citations", p.citations},
                            {"authors", std::move(authors)}});
  }
  doc["publications"] = std::move(publications);
  return doc.dump() + "\n";
}

CorpusSnapshot deserialize_snapshot(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::format, fmt::format("snapshot is not valid JSON: {}", e.what()));
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != kSnapshotFormatName) {
      throw Error(ErrorCode::format, "not a bibliorank snapshot");
    }
    const int version = doc.at("version").get<int>();
    if (version != kSnapshotFormatVersion) {
      throw Error(ErrorCode::format, fmt::format("snapshot format version {} is not supported (expected {})",
                                                 version, kSnapshotFormatVersion));
    }
    const auto census = CensusDate::parse(doc.at("census_date").get<std::string>());
    const YearWindow window{doc.at("window").at("start").get<int>(), doc.at("window").at("end").get<int>()};

    std::vector<Researcher> researchers;
    for (const auto& r : doc.at("researchers")) {
      Researcher out;
      out.researcher_id = r.at("researcher_id").get<std::string>();
      out.sds = r.at("sds").get<std::string>();
      auto rank = parse_academic_rank(r.at("rank").get<std::string>());
      if (!rank) throw Error(ErrorCode::format, "snapshot contains an unknown rank");
      out.rank = *rank;
      out.university = r.at("university").get<std::string>();
      if (!r.at("department").is_null()) out.department = r.at("department").get<std::string>();
      out.groups = r.at("groups").get<std::vector<std::string>>();
      researchers.push_back(std::move(out));
    }

    std::vector<Publication> publications;
    for (const auto& p : doc.at("publications")) {
      Publication out;
      out.pub_id = p.at("pub_id").get<std::string>();
      out.year = p.at("year").get<int>();
      auto type = parse_doc_type(p.at("doc_type").get<std::string>());
      if (!type) throw Error(ErrorCode::format, "snapshot contains an unknown doc_type");
      out.doc_type = *type;
      out.categories = p.at("categories").get<std::vector<std::string>>();
      out.citations = p.at("citations").get<std::int64_t>();
      for (const auto& a : p.at("authors")) {
        out.authors.push_back(a.is_null() ? Author::external() : Author::registry(a.get<std::string>()));
      }
      publications.push_back(std::move(out));
    }
    return CorpusSnapshot(std::move(publications), std::move(researchers), census, window);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::format, fmt::format("malformed snapshot: {}", e.what()));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::format) throw;
    throw Error(ErrorCode::format, fmt::format("malformed snapshot: {}", e.what()));
  }
}

void write_snapshot(const CorpusSnapshot& snapshot, const std::filesystem::path& path) {
  const std::string payload = serialize_snapshot(snapshot);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, fmt::format("cannot write '{}'", tmp.string()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw Error(ErrorCode::io, fmt::format("short write to '{}'", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io, fmt::format("cannot move snapshot into '{}': {}", path.string(), ec.message()));
}

CorpusSnapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize_snapshot(buffer.str());
}

void write_publications_jsonl(const CorpusSnapshot& snapshot, std::ostream& out) {
  for (const auto& p : snapshot.publications()) {
    json authors = json::array();
    for (std::size_t i = 0; i < p.authors.size(); ++i) {
      const auto& a = p.authors[i];
      authors.push_back({{"researcher_id", a.researcher_id ? json(*a.researcher_id) : json(nullptr)},
                         {"external", a.is_external()},
                         {"position", i + 1}});
    }
    json record = {{"pub_id", p.pub_id},         {"year", p.year},
                   {"doc_type", to_string(p.doc_type)}, {"categories", p.categories},
                   {"citations", p.citations},   {"authors", std::move(authors)}};
    out << record.dump() << '\n';
  }
}

void write_researchers_csv(const CorpusSnapshot& snapshot, std::ostream& out) {
  out << kResearcherCsvHeader << '\n';
  for (const auto& r : snapshot.researchers()) {
    std::string groups;
    for (std::size_t i = 0; i < r.groups.size(); ++i) {
      if (i) groups.push_back(';');
      groups += r.groups[i];
    }
    out << csv::join({r.researcher_id, r.sds, std::string(to_string(r.rank)), r.university,
                      r.department.value_or(""), groups})
        << '\n';
  }
}

}  // namespace bibliorank
