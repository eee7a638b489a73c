#ifndef COALG_ERRORS_HPP
#define COALG_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coalg {

/// Carrier, codomain or functor-shape mismatch between arguments.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its cap. `count` is exact unless `lower_bound`.
class size_error : public std::runtime_error {
 public:
  size_error(const std::string& what, std::uint64_t count, bool lower_bound)
      : std::runtime_error(what), count_(count), lower_bound_(lower_bound) {}

  std::uint64_t count() const noexcept { return count_; }
  bool is_lower_bound() const noexcept { return lower_bound_; }

 private:
  std::uint64_t count_;
  bool lower_bound_;
};

/// A value does not inhabit the functor it is claimed to inhabit.
class shape_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Input parsed but is not a well-formed system (undeclared state, missing structure, ...).
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coalg

#endif
