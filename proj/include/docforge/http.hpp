#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace docforge::http {

struct Response {
  int status = 0;
  std::string body;
  std::string content_type;
};

struct GetOptions {
  std::chrono::milliseconds timeout{10000};
  std::string user_agent;
  bool follow_redirects = true;
};

// One GET request. Returns nullopt on transport failure (DNS, connect,
// timeout, TLS); `error` receives a short reason.
std::optional<Response> get(std::string_view url, const GetOptions& options, std::string* error = nullptr);

// "charset=..." parameter of a Content-Type value, lowercased; empty if absent.
std::string charset_of(std::string_view content_type);

}  // namespace docforge::http
