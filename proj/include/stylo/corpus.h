#ifndef STYLO_CORPUS_H_
#define STYLO_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

struct BookRecord {
  std::string author;
  std::string title;
  int year = 0;
  // As written in the manifest.
  std::string path;
  // `path` resolved against the manifest's directory.
  std::filesystem::path resolved_path;
};

class CorpusManifest {
 public:
  explicit CorpusManifest(std::vector<BookRecord> records);

  const std::vector<BookRecord>& records() const { return records_; }
  // Distinct author labels, sorted.
  const std::vector<std::string>& authors() const { return authors_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<BookRecord> records_;
  std::vector<std::string> authors_;
};

// Parses the `author,title,year,path` CSV. Throws ConfigError when the file
// cannot be opened and DataError (with a line number where applicable) for
// malformed rows, duplicate paths, missing book files, fewer than 2 authors
// or an author with a single book.
CorpusManifest load_manifest(const std::filesystem::path& path);

// Same as load_manifest but reads from a stream; relative book paths are
// resolved against `base_dir`.
CorpusManifest parse_manifest(std::istream& in,
                              const std::filesystem::path& base_dir);

// Writes the manifest in canonical form: header line, then one row per
// record, quoting only the fields that need it.
void write_manifest(std::ostream& out, const CorpusManifest& manifest);

// Reads a book file as UTF-8, replacing invalid byte sequences with U+FFFD.
std::string read_book_text(const std::filesystem::path& path);

// Replaces ill-formed UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

// Cuts the text down to the part between a Gutenberg-style
// "*** START OF ... ***" line and the following "*** END OF ... ***" line.
// A missing marker leaves that side untouched.
std::string strip_boilerplate(std::string_view raw);

struct TruncationPolicy {
  std::size_t target_length = 0;
};

// The shortest stream length across a run. Throws DataError when that
// minimum is 0 or `lengths` is empty.
TruncationPolicy truncation_policy_for(std::span<const std::size_t> lengths);

// First `policy.target_length` tokens. Throws DataError when the stream is
// shorter than the target.
std::vector<std::string> truncate(std::vector<std::string> tokens,
                                  const TruncationPolicy& policy);

}  // namespace stylo

#endif  // STYLO_CORPUS_H_
