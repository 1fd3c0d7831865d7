#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/baseurl.hpp"
#include "docforge/methods.hpp"

namespace docforge {

struct ApiSpec {
  BaseUrl base;
  std::vector<Endpoint> endpoints;  // sorted by canonical template, unique
  std::string source;               // free text, e.g. the seed URL
};

// Throws Error when two endpoints render to the same template, a method set
// is empty, or a segment cannot be written and read back unchanged (a
// literal with markers or a leading ':', a parameter name with markers or
// '/').
void validate_spec(const ApiSpec& spec);

// Sorts endpoints by canonical template and merges duplicates' methods.
void normalize_endpoints(std::vector<Endpoint>& endpoints);

// OpenAPI 2.0 shaped JSON: swagger, schemes, host, basePath, info, paths.
// Keys sorted, two-space indent, trailing newline.
std::string emit_spec(const ApiSpec& spec);

// Reads the same shape back. Missing schemes means https, missing basePath
// means "". Throws Error with line/column on malformed JSON, and on a
// missing host or paths.
ApiSpec parse_spec(std::string_view text);

ApiSpec read_spec_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace docforge
