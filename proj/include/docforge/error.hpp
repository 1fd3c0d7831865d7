#pragma once

#include <stdexcept>
#include <string>

namespace docforge {

// Fatal input or pipeline error. Callers at the CLI boundary map it to an
// exit code; library code never exits the process.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when classification leaves no API URL to build a spec from.
class NoApiUrlsError : public Error {
 public:
  NoApiUrlsError() : Error("no API URLs classified") {}
};

}  // namespace docforge
