#pragma once

#include <stdexcept>
#include <string>

#include "cubik/geometry.h"

namespace cubik {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

PackingSolution parse_solution(const std::string& text);
std::string write_solution(const PackingSolution& sol);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cubik
