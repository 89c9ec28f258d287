#pragma once

#include <string>

namespace shapegen {

/// Shortest decimal representation that parses back to exactly `v`.
std::string shortest(double v);

/// printf("%.<sig>g").
std::string significant(double v, int sig);

}  // namespace shapegen
