#include "stylo/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "stylo/csv.h"
#include "stylo/error.h"

namespace stylo {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string upper_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

bool is_marker_line(std::string_view line, std::string_view keyword) {
  const std::string up = upper_ascii(line);
  if (up.find(keyword) == std::string::npos) return false;
  const std::string_view t = trim(line);
  return t.starts_with("***") || up.find("PROJECT GUTENBERG") != std::string::npos;
}

}  // namespace

CorpusManifest::CorpusManifest(std::vector<BookRecord> records)
    : records_(std::move(records)) {
  std::set<std::string> authors;
  std::unordered_map<std::string, int> books_per_author;
  std::unordered_set<std::string> paths;
  for (const BookRecord& r : records_) {
    if (r.author.empty()) throw DataError("manifest record with empty author");
    if (r.path.empty()) throw DataError("manifest record with empty path");
    if (!paths.insert(r.resolved_path.lexically_normal().string()).second) {
      throw DataError(fmt::format("duplicate path in manifest: {}", r.path));
    }
    authors.insert(r.author);
    ++books_per_author[r.author];
  }
  if (records_.empty()) throw DataError("manifest has no records");
  if (authors.size() < 2) throw DataError("fewer than 2 authors in manifest");
  for (const auto& [author, count] : books_per_author) {
    if (count < 2) {
      throw DataError(
          fmt::format("author '{}' has only one book; need at least 2", author));
    }
  }
  authors_.assign(authors.begin(), authors.end());
}

CorpusManifest parse_manifest(std::istream& in,
                              const std::filesystem::path& base_dir) {
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<BookRecord> records;
  std::unordered_set<std::string> seen_paths;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = csv::split_line(line);
    if (!fields) {
      throw DataError(fmt::format("manifest line {}: malformed quoting", line_no));
    }
    if (!header_seen) {
      const std::vector<std::string> expected{"author", "title", "year", "path"};
      std::vector<std::string> got;
      for (const auto& f : *fields) got.emplace_back(trim(f));
      if (got != expected) {
        throw DataError(fmt::format(
            "manifest line {}: expected header 'author,title,year,path'",
            line_no));
      }
      header_seen = true;
      continue;
    }
    if (fields->size() != 4) {
      throw DataError(fmt::format("manifest line {}: expected 4 fields, got {}",
                                  line_no, fields->size()));
    }
    BookRecord rec;
    rec.author = std::string(trim((*fields)[0]));
    rec.title = std::string(trim((*fields)[1]));
    const std::string_view year = trim((*fields)[2]);
    const auto [ptr, ec] =
        std::from_chars(year.data(), year.data() + year.size(), rec.year);
    if (ec != std::errc() || ptr != year.data() + year.size()) {
      throw DataError(fmt::format("manifest line {}: year '{}' is not an integer",
                                  line_no, year));
    }
    rec.path = std::string(trim((*fields)[3]));
    if (rec.author.empty()) {
      throw DataError(fmt::format("manifest line {}: empty author", line_no));
    }
    if (rec.path.empty()) {
      throw DataError(fmt::format("manifest line {}: empty path", line_no));
    }
    std::filesystem::path p(rec.path);
    rec.resolved_path = p.is_absolute() ? p : base_dir / p;
    if (!seen_paths.insert(rec.resolved_path.lexically_normal().string()).second) {
      throw DataError(
          fmt::format("manifest line {}: duplicate path {}", line_no, rec.path));
    }
    if (!std::filesystem::is_regular_file(rec.resolved_path)) {
      throw DataError(fmt::format("manifest line {}: book file not found: {}",
                                  line_no, rec.resolved_path.string()));
    }
    records.push_back(std::move(rec));
  }
  if (!header_seen) throw DataError("manifest is empty");
  return CorpusManifest(std::move(records));
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest: " + path.string());
  return parse_manifest(in, path.parent_path());
}

void write_manifest(std::ostream& out, const CorpusManifest& manifest) {
  out << "author,title,year,path\n";
  for (const BookRecord& r : manifest.records()) {
    out << csv::escape(r.author) << ',' << csv::escape(r.title) << ',' << r.year
        << ',' << csv::escape(r.path) << '\n';
  }
}

std::string sanitize_utf8(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  auto cont = [&](std::size_t k) {
    return k < n && (static_cast<unsigned char>(bytes[k]) & 0xC0) == 0x80;
  };
  while (i < n) {
    const auto b = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    if (b < 0x80) {
      len = 1;
    } else if (b >= 0xC2 && b <= 0xDF) {
      len = cont(i + 1) ? 2 : 0;
    } else if (b >= 0xE0 && b <= 0xEF) {
      if (cont(i + 1) && cont(i + 2)) {
        const auto b1 = static_cast<unsigned char>(bytes[i + 1]);
        const bool overlong = b == 0xE0 && b1 < 0xA0;
        const bool surrogate = b == 0xED && b1 >= 0xA0;
        len = (overlong || surrogate) ? 0 : 3;
      }
    } else if (b >= 0xF0 && b <= 0xF4) {
      if (cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        const auto b1 = static_cast<unsigned char>(bytes[i + 1]);
        const bool overlong = b == 0xF0 && b1 < 0x90;
        const bool too_big = b == 0xF4 && b1 >= 0x90;
        len = (overlong || too_big) ? 0 : 4;
      }
    }
    if (len == 0) {
      out.append(kReplacement);
      ++i;
    } else {
      out.append(bytes.substr(i, len));
      i += len;
    }
  }
  return out;
}

std::string read_book_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read book file: " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  // Drop a UTF-8 byte order mark.
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.erase(0, 3);
  return sanitize_utf8(bytes);
}

std::string strip_boilerplate(std::string_view raw) {
  std::size_t body_begin = 0;
  std::size_t body_end = raw.size();
  bool have_start = false;

  std::size_t pos = 0;
  while (pos < raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    const std::size_t next = eol == std::string_view::npos ? raw.size() : eol + 1;
    const std::string_view line = raw.substr(pos, next - pos);
    if (!have_start && is_marker_line(line, "START OF") &&
        upper_ascii(line).find("PROJECT GUTENBERG") != std::string::npos) {
      have_start = true;
      body_begin = next;
    } else if (is_marker_line(line, "END OF")) {
      body_end = pos;
      break;
    }
    pos = next;
  }
  if (body_end < body_begin) body_end = body_begin;
  return std::string(raw.substr(body_begin, body_end - body_begin));
}

TruncationPolicy truncation_policy_for(std::span<const std::size_t> lengths) {
  if (lengths.empty()) throw DataError("cannot truncate an empty corpus");
  const std::size_t shortest = *std::min_element(lengths.begin(), lengths.end());
  if (shortest == 0) throw DataError("a book has no tokens after preprocessing");
  return TruncationPolicy{shortest};
}

std::vector<std::string> truncate(std::vector<std::string> tokens,
                                  const TruncationPolicy& policy) {
  if (policy.target_length == 0) {
    throw DataError("truncation target must be positive");
  }
  if (tokens.size() < policy.target_length) {
    throw DataError(fmt::format(
        "token stream of length {} is shorter than the truncation target {}",
        tokens.size(), policy.target_length));
  }
  tokens.resize(policy.target_length);
  return tokens;
}

}  // namespace stylo
