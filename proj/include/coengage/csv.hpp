#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "coengage/common.hpp"

namespace coengage {

// Buffered line reader over a file. Strips trailing \n and \r. Quoted fields
// may not span lines (handles and labels never contain newlines).
class LineReader {
public:
  explicit LineReader(const std::string& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // false at end of input; the view stays valid until the next call
  bool next(std::string_view& line);

private:
  bool fill();

  std::FILE* file_ = nullptr;
  std::string buf_;
  std::size_t pos_ = 0;
  std::size_t len_ = 0;
  bool eof_ = false;
  std::string carry_;
};

// Buffering writer that throws IoError on any failure.
class FileWriter {
public:
  explicit FileWriter(const std::string& path);
  ~FileWriter();
  FileWriter(const FileWriter&) = delete;
  FileWriter& operator=(const FileWriter&) = delete;

  void write(std::string_view text);
  // appends to the internal buffer, flushing when it grows past ~1 MiB
  void append(std::string& buf, bool force_flush = false);
  void close();

private:
  std::string path_;
  std::FILE* file_;
};

// Splits one CSV record into fields. Supports RFC-style double-quoted fields
// with "" escapes. Returns false and sets err on malformed quoting.
bool split_csv_line(std::string_view line, std::vector<std::string>& out, std::string& err);

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS[.fff][Z]" as a UTC instant.
// Returns false on anything else (non-UTC offsets included).
bool parse_timestamp_utc(std::string_view text, std::int64_t& epoch_seconds);

// Epoch seconds -> "YYYY-MM-DD" (UTC).
std::string format_utc_date(std::int64_t epoch_seconds);

} // namespace coengage
