#include <doctest.h>

#include "docforge/url.hpp"

using namespace docforge;

TEST_CASE("parse_url splits the pieces") {
  auto u = parse_url("https://API.Example.com:8443/v1/users/{id}?q=1#top");
  REQUIRE(u);
  CHECK(u->scheme == "https");
  CHECK(u->host == "API.Example.com");
  CHECK(u->port == 8443);
  CHECK(u->path == "/v1/users/{id}");
  CHECK(u->query == "q=1");
  CHECK(u->fragment == "top");
  CHECK(u->without_query() == "https://API.Example.com:8443/v1/users/{id}");
}

TEST_CASE("parse_url rejects what it cannot use") {
  CHECK_FALSE(parse_url("ftp://example.com/file"));
  CHECK_FALSE(parse_url("https:///nohost"));
  CHECK_FALSE(parse_url("not a url"));
  auto f = parse_url("file:///docs/a%20b.html");
  REQUIRE(f);
  CHECK(f->scheme == "file");
  CHECK(f->host.empty());
}

TEST_CASE("normalize lowercases the host and drops default ports and trailing slash") {
  auto u = normalize(*parse_url("HTTPS://Api.Example.COM:443/v1/"));
  CHECK(u.host == "api.example.com");
  CHECK(u.port == -1);
  CHECK(u.path == "/v1");
  CHECK(normalize(*parse_url("http://x.example:80/")).to_string() == "http://x.example");
  CHECK(normalize(*parse_url("http://x.example:8080/a")).authority() == "x.example:8080");
}

TEST_CASE("resolve_reference") {
  const std::string base = "https://docs.example.com/guide/intro.html?x=1";
  CHECK(resolve_reference(base, "next.html") == "https://docs.example.com/guide/next.html");
  CHECK(resolve_reference(base, "../api/users.html") == "https://docs.example.com/api/users.html");
  CHECK(resolve_reference(base, "/root.html#frag") == "https://docs.example.com/root.html");
  CHECK(resolve_reference(base, "//cdn.example.com/x") == "https://cdn.example.com/x");
  CHECK(resolve_reference(base, "https://other.example/") == "https://other.example/");
  CHECK(resolve_reference(base, "?page=2") == "https://docs.example.com/guide/intro.html?page=2");
  CHECK_FALSE(resolve_reference(base, "mailto:someone@example.com"));
  CHECK_FALSE(resolve_reference(base, "javascript:void(0)"));
}

TEST_CASE("path helpers") {
  CHECK(split_path("/a//b/c/") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_path("/").empty());
  CHECK(strip_query_and_fragment("/a/b?x=1#y") == "/a/b");
  CHECK(strip_query_and_fragment("/a/b#y?x") == "/a/b");
  CHECK(starts_with_http_scheme("HTTP://x"));
  CHECK_FALSE(starts_with_http_scheme("/x"));
}
