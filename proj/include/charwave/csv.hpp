#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace charwave {

// Locale-independent shortest-round-trip-safe text: 17 significant digits.
std::string format_real(double v);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(std::string_view v);
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

// "# key=value" summary line following a CSV table.
void summary_line(std::ostream& out, std::string_view key, std::string_view value);
void summary_line(std::ostream& out, std::string_view key, double value);

}  // namespace charwave
