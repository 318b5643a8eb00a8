#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace diracgap {

/// Locale-independent shortest round-trip decimal form (std::to_chars).
std::string format_double(double v);
std::string format_int(long long v);

/// CSV emitter: '#' comment lines, one header row, data rows.  Output is a
/// pure function of the values written, so identical runs are byte-identical.
class CsvWriter {
public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& values);

private:
  std::ofstream out_;
};

}  // namespace diracgap
