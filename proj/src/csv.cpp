#include "ctrw/csv.hpp"

#include <cstdio>

#include "ctrw/errors.hpp"

namespace ctrw {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
  if (!out_) throw IoError("cannot open output file: " + path);
}

CsvWriter::~CsvWriter() {
  try {
    if (!closed_) close();
  } catch (...) {
    // destructor must not throw; an explicit close() reports the failure
  }
}

void CsvWriter::put_line(const std::string& line) {
  out_ << line << '\n';
  if (!out_) throw IoError("write failed: " + path_);
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
  put_line("# " + key + " = " + value);
}

void CsvWriter::header(const std::vector<std::string>& names) {
  std::string line;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) line += ',';
    line += names[i];
  }
  put_line(line);
}

void CsvWriter::row(const std::vector<std::string>& cells) { header(cells); }

void CsvWriter::close() {
  closed_ = true;
  out_.flush();
  if (!out_) throw IoError("flush failed: " + path_);
  out_.close();
}

}  // namespace ctrw
