#include "gaitopt/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace gaitopt::csv {

std::string format_double(double v) {
  char buf[40];
  // try the shortest representation that round-trips
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

long long to_ll(const std::string& s) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

void Row::sep() {
  if (!first_) os_ << ',';
  first_ = false;
}

Row& Row::num(double v) {
  sep();
  os_ << format_double(v);
  return *this;
}

Row& Row::integer(long long v) {
  sep();
  os_ << v;
  return *this;
}

Row& Row::text(std::string_view s) {
  sep();
  os_ << s;
  return *this;
}

void Row::end() { os_ << '\n'; }

}  // namespace gaitopt::csv
