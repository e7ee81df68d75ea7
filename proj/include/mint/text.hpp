#pragma once

#include <zlib.h>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mint {

inline std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

inline std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// Splits on runs of blanks/tabs, dropping empty fields.
inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size();
}

inline bool parse_long(std::string_view s, long& out) {
  if (s.empty()) return false;
  std::string buf(s);
  char* end = nullptr;
  out = std::strtol(buf.c_str(), &end, 10);
  return end == buf.c_str() + buf.size();
}

// FNV-1a, used to stamp output files with a config fingerprint.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 1469598103934665603ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

// Line reader over plain or gzip files (zlib reads both transparently).
// I/O failure mid-stream is sticky: ok() goes false and stays false.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path) {
    file_ = gzopen(path.c_str(), "rb");
    if (file_ == nullptr) ok_ = false;
  }

  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  ~LineReader() {
    if (file_ != nullptr) gzclose(file_);
  }

  bool ok() const { return ok_; }
  const std::string& path() const { return path_; }

  // False at end of stream or on error; check ok() to tell them apart.
  bool getline(std::string& line) {
    line.clear();
    if (!ok_ || file_ == nullptr) return false;
    char buf[4096];
    bool got_any = false;
    while (true) {
      if (gzgets(file_, buf, sizeof(buf)) == nullptr) {
        int errnum = 0;
        gzerror(file_, &errnum);
        if (errnum != Z_OK && errnum != Z_STREAM_END) ok_ = false;
        return got_any && ok_;
      }
      got_any = true;
      size_t len = std::char_traits<char>::length(buf);
      if (len > 0 && buf[len - 1] == '\n') {
        line.append(buf, len - 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
      }
      line.append(buf, len);
    }
  }

 private:
  std::string path_;
  gzFile file_ = nullptr;
  bool ok_ = true;
};

}  // namespace mint
