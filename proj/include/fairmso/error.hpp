#pragma once

#include <stdexcept>
#include <string>

namespace fairmso {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph / formula / instance text. line is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ModulatorError : public Error {
 public:
  ModulatorError(const std::string& what, int u, int v) : Error(what), u_(u), v_(v) {}
  // the non-edge inside a component of G - D
  int witness_u() const { return u_; }
  int witness_v() const { return v_; }

 private:
  int u_;
  int v_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairmso
