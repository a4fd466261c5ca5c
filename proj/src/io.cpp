#include "barrierclock/io.hpp"

#include <cstdio>

namespace barrierclock::io {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt17_opt(const std::optional<double>& v) {
  return v ? fmt17(*v) : std::string{};
}

}  // namespace barrierclock::io
