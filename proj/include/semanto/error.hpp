#pragma once

#include <stdexcept>

namespace semanto {

/// Base for failures the CLI maps onto distinct exit statuses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An input stream is syntactically unusable as a whole (bad header,
/// unparseable corpus document, malformed metric table).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace semanto
