#include "docforge/http.hpp"

#include <httplib.h>

#include "docforge/url.hpp"

namespace docforge::http {

std::optional<Response> get(std::string_view url, const GetOptions& options, std::string* error) {
  auto parsed = parse_url(url);
  if (!parsed || parsed->scheme == "file") {
    if (error) *error = "unsupported URL";
    return std::nullopt;
  }
  std::string origin = parsed->scheme + "://" + parsed->authority();
  std::string target = parsed->path.empty() ? "/" : parsed->path;
  if (parsed->has_query) target += "?" + parsed->query;

  httplib::Client client(origin);
  auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_follow_location(options.follow_redirects);
  httplib::Headers headers;
  if (!options.user_agent.empty()) headers.emplace("User-Agent", options.user_agent);

  auto result = client.Get(target, headers);
  if (!result) {
    if (error) *error = httplib::to_string(result.error());
    return std::nullopt;
  }
  Response response;
  response.status = result->status;
  response.body = std::move(result->body);
  response.content_type = result->get_header_value("Content-Type");
  return response;
}

std::string charset_of(std::string_view content_type) {
  auto lower = to_lower(content_type);
  auto pos = lower.find("charset=");
  if (pos == std::string::npos) return {};
  auto value = std::string_view(lower).substr(pos + 8);
  if (!value.empty() && (value.front() == '"' || value.front() == '\'')) value.remove_prefix(1);
  auto end = value.find_first_of(" ;\"'");
  return std::string(value.substr(0, end));
}

}  // namespace docforge::http
