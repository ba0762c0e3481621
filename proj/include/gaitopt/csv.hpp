#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gaitopt::csv {

/// Shortest decimal rendering that parses back to the same double.
std::string format_double(double v);

double to_double(const std::string& s);
long long to_ll(const std::string& s);

std::vector<std::string> split(const std::string& line, char sep = ',');

/// Comma-separated row writer.
class Row {
 public:
  explicit Row(std::ostream& os) : os_(os) {}
  Row& num(double v);
  Row& integer(long long v);
  Row& text(std::string_view s);
  void end();

 private:
  std::ostream& os_;
  bool first_ = true;
  void sep();
};

}  // namespace gaitopt::csv
