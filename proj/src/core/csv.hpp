#pragma once

#include <cstdio>
#include <memory>
#include <string>

#include "core/errors.hpp"

namespace rwlab {

// Line-oriented CSV writer with fixed formatting, so reruns are
// byte-identical.
class CsvWriter {
public:
  explicit CsvWriter(const std::string& path) : path_(path), f_(std::fopen(path.c_str(), "wb")) {
    if (f_ == nullptr) io_error("cannot open for writing: " + path);
  }
  ~CsvWriter() {
    if (f_ != nullptr) std::fclose(f_);
  }
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void raw(const std::string& s) {
    if (std::fwrite(s.data(), 1, s.size(), f_) != s.size()) io_error("write failure: " + path_);
  }
  void field(const std::string& s) {
    if (!first_) raw(",");
    raw(s);
    first_ = false;
  }
  void field(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    field(std::string(buf));
  }
  void field(std::uint64_t v) { field(std::to_string(v)); }
  void field(std::int64_t v) { field(std::to_string(v)); }
  void endrow() {
    raw("\n");
    first_ = true;
  }

private:
  std::string path_;
  std::FILE* f_;
  bool first_ = true;
};

}  // namespace rwlab
