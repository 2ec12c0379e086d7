#pragma once

#include <stdexcept>
#include <string>

namespace charsum {

/* Error taxonomy shared by the library and the CLI exit codes:
 * usage/shape/parse -> 2, capacity -> 3, verification -> 4. */

struct input_error : std::invalid_argument {
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

struct parse_error : input_error {
  explicit parse_error(const std::string& what) : input_error(what) {}
};

struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

struct verification_error : std::runtime_error {
  explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace charsum
