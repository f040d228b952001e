#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace ctrw {

// Shortest round-trip-stable decimal rendering (%.12g): integers print bare
// ("10000000"), everything else with up to 12 significant digits. Used for
// every numeric CSV cell so repeat runs are byte-identical.
std::string format_number(double v);

// Comment-block + header + rows writer. Layout contract:
//   # key = value          (metadata block, first)
//   col1,col2,...          (exactly one header line)
//   cells...               (data rows)
//   # key = value          (optional summary/footer comments)
// All failures surface as IoError with the path in the message.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void comment(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& cells);

  // Flush and verify the stream; further writes are invalid. Called by the
  // destructor if not done explicitly (destructor swallows the throw).
  void close();

 private:
  void put_line(const std::string& line);

  std::string path_;
  std::ofstream out_;
  bool closed_ = false;
};

}  // namespace ctrw
