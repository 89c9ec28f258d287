#include "shapegen/format.hpp"

#include <cstdio>
#include <cstdlib>

namespace shapegen {

std::string significant(double v, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

std::string shortest(double v) {
  for (int sig = 1; sig < 17; ++sig) {
    std::string s = significant(v, sig);
    if (std::strtod(s.c_str(), nullptr) == v) return s;
  }
  return significant(v, 17);
}

}  // namespace shapegen
