#include "coengage/csv.hpp"

#include <cerrno>
#include <cstring>

namespace coengage {

namespace {
constexpr std::size_t kChunk = 1 << 20;
} // namespace

LineReader::LineReader(const std::string& path) {
  file_ = std::fopen(path.c_str(), "rb");
  if (!file_)
    throw IoError("cannot open " + path + ": " + std::strerror(errno));
  buf_.resize(kChunk);
}

LineReader::~LineReader() {
  if (file_)
    std::fclose(file_);
}

bool LineReader::fill() {
  if (eof_)
    return false;
  len_ = std::fread(buf_.data(), 1, buf_.size(), file_);
  pos_ = 0;
  if (len_ < buf_.size())
    eof_ = true;
  return len_ > 0;
}

bool LineReader::next(std::string_view& line) {
  carry_.clear();
  for (;;) {
    if (pos_ >= len_) {
      if (!fill()) {
        if (carry_.empty())
          return false;
        line = carry_;
        if (!line.empty() && line.back() == '\r')
          line.remove_suffix(1);
        return true;
      }
    }
    const char* start = buf_.data() + pos_;
    const char* nl = static_cast<const char*>(std::memchr(start, '\n', len_ - pos_));
    if (nl) {
      std::size_t n = static_cast<std::size_t>(nl - start);
      pos_ += n + 1;
      if (carry_.empty()) {
        line = std::string_view(start, n);
      } else {
        carry_.append(start, n);
        line = carry_;
      }
      if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
      return true;
    }
    carry_.append(start, len_ - pos_);
    pos_ = len_;
  }
}

FileWriter::FileWriter(const std::string& path) : path_(path) {
  file_ = std::fopen(path.c_str(), "wb");
  if (!file_)
    throw IoError("cannot write " + path + ": " + std::strerror(errno));
}

FileWriter::~FileWriter() {
  if (file_)
    std::fclose(file_);
}

void FileWriter::write(std::string_view text) {
  if (std::fwrite(text.data(), 1, text.size(), file_) != text.size())
    throw IoError("short write to " + path_);
}

void FileWriter::append(std::string& buf, bool force_flush) {
  if (force_flush || buf.size() > (1u << 20)) {
    write(buf);
    buf.clear();
  }
}

void FileWriter::close() {
  if (std::fclose(file_) != 0) {
    file_ = nullptr;
    throw IoError("error closing " + path_);
  }
  file_ = nullptr;
}

bool split_csv_line(std::string_view line, std::vector<std::string>& out, std::string& err) {
  out.clear();
  // fast path: no quotes anywhere
  if (line.find('"') == std::string_view::npos) {
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        out.emplace_back(line.substr(start));
        return true;
      }
      out.emplace_back(line.substr(start, comma - start));
      start = comma + 1;
    }
  }
  std::string field;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (true) {
    field.clear();
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        char c = line[i];
        if (c == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          field.push_back(c);
          ++i;
        }
      }
      if (!closed) {
        err = "unterminated quoted field";
        return false;
      }
      if (i < n && line[i] != ',') {
        err = "garbage after closing quote";
        return false;
      }
    } else {
      while (i < n && line[i] != ',') {
        if (line[i] == '"') {
          err = "quote inside unquoted field";
          return false;
        }
        field.push_back(line[i]);
        ++i;
      }
    }
    out.push_back(field);
    if (i >= n)
      return true;
    ++i; // skip comma
    if (i == n) {
      out.emplace_back();
      return true;
    }
  }
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"')
      out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

// days since 1970-01-01 for a civil date (Howard Hinnant's days_from_civil)
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

bool read_digits(std::string_view s, std::size_t pos, std::size_t count, unsigned& out) {
  if (pos + count > s.size())
    return false;
  out = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9')
      return false;
    out = out * 10 + static_cast<unsigned>(c - '0');
  }
  return true;
}

} // namespace

bool parse_timestamp_utc(std::string_view text, std::int64_t& epoch_seconds) {
  unsigned year, month, day;
  if (!read_digits(text, 0, 4, year) || text.size() < 10 || text[4] != '-' || text[7] != '-')
    return false;
  if (!read_digits(text, 5, 2, month) || !read_digits(text, 8, 2, day))
    return false;
  if (month < 1 || month > 12 || day < 1 || day > 31)
    return false;
  std::int64_t secs = days_from_civil(year, month, day) * 86400;
  if (text.size() == 10) {
    epoch_seconds = secs;
    return true;
  }
  if (text[10] != 'T' && text[10] != ' ')
    return false;
  unsigned hh, mm, ss;
  if (text.size() < 19 || text[13] != ':' || text[16] != ':')
    return false;
  if (!read_digits(text, 11, 2, hh) || !read_digits(text, 14, 2, mm) ||
      !read_digits(text, 17, 2, ss))
    return false;
  if (hh > 23 || mm > 59 || ss > 60)
    return false;
  std::size_t i = 19;
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t frac = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      ++i;
      ++frac;
    }
    if (frac == 0)
      return false;
  }
  if (i < text.size()) {
    if (text[i] != 'Z' || i + 1 != text.size())
      return false; // only the UTC designator is accepted
  }
  epoch_seconds = secs + hh * 3600 + mm * 60 + ss;
  return true;
}

std::string format_utc_date(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / 86400;
  if (epoch_seconds < 0 && epoch_seconds % 86400 != 0)
    --days;
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u", static_cast<long long>(y), m, d);
  return buf;
}

} // namespace coengage
