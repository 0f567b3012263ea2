#pragma once

#include <stdexcept>
#include <string>

namespace maxgraph {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A nodal function violates the spacelike bound |grad u| < 1 somewhere.
/// Carries the worst offending node so callers can report it.
class NotSpacelikeError : public Error {
public:
  NotSpacelikeError(const std::string& what, int node, double grad_norm2)
      : Error(what), worst_node(node), worst_grad_norm2(grad_norm2) {}
  int worst_node;
  double worst_grad_norm2;
};

/// Configuration file problem with a precise location.
class ConfigError : public Error {
public:
  ConfigError(const std::string& file, int line, const std::string& msg)
      : Error(file + ":" + std::to_string(line) + ": " + msg),
        file_name(file), line_number(line), message(msg) {}
  std::string file_name;
  int line_number;
  std::string message;
};

}  // namespace maxgraph
