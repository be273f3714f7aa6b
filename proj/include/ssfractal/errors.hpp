#pragma once

#include <stdexcept>
#include <string>

namespace ssf {

enum class ErrorKind {
  invalid_input,
  invalid_interval,
  empty_set,
  depth_overflow,
  index_out_of_schedule,
  negative_weight,
  horizon_too_small,
  too_few_scales,
  ambiguous_expansion,
  out_of_range,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above; the CLI
// maps them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ssf
