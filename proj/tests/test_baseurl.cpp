#include <doctest.h>

#include <random>

#include "docforge/baseurl.hpp"
#include "docforge/error.hpp"
#include "docforge/log.hpp"

using namespace docforge;
using V = std::vector<std::string>;

TEST_CASE("base url examples") {
  CHECK(infer_base_url(V{"https://api.citycontext.com/v1/postcodes", "https://api.citycontext.com/v2/<location>"})
            .full() == "https://api.citycontext.com");
  CHECK(infer_base_url(V{"https://api.github.com/users/alice/gists", "https://api.github.com/repos/vmg/redcarpet/issues"})
            .full() == "https://api.github.com");
  auto single = infer_base_url(V{"https://api.x.com/v1/a/b"});
  CHECK(single.full() == "https://api.x.com");
  CHECK(single.base_path.empty());
}

TEST_CASE("segment-granular prefix") {
  auto b = infer_base_url(V{"https://api.x.com/v1/users", "https://api.x.com/v1/items?x=1", "https://api.x.com/v10/a"});
  CHECK(b.full() == "https://api.x.com");
  auto c = infer_base_url(V{"https://api.x.com/v1/users/1", "https://api.x.com/v1/items"});
  CHECK(c.base_path == "/v1");
  // duplicates collapse to one distinct URL
  CHECK(infer_base_url(V{"https://api.x.com/v1/a", "https://api.x.com/v1/a?page=2"}).base_path.empty());
}

TEST_CASE("parameter segments never enter the base path") {
  auto b = infer_base_url(V{"https://api.x.com/{tenant}/a", "https://api.x.com/{tenant}/b"});
  CHECK(b.base_path.empty());
  auto c = infer_base_url(V{"https://api.x.com/v2/:org/a", "https://api.x.com/v2/:org/b"});
  CHECK(c.base_path == "/v2");
}

TEST_CASE("normalization") {
  auto b = infer_base_url(V{"HTTPS://API.X.com:443/v1/a/", "https://api.x.com/v1/b"});
  CHECK(b.full() == "https://api.x.com/v1");
  CHECK(infer_base_url(V{"http://h.example:8080/a/b", "http://h.example:8080/a/c"}).full() ==
        "http://h.example:8080/a");
}

TEST_CASE("majority host wins; ties are broken lexicographically with a warning") {
  auto b = infer_base_url(V{"https://a.example/v1/x", "https://b.example/v1/y", "https://b.example/v1/z"});
  CHECK(b.host == "b.example");
  CHECK(b.base_path == "/v1");
  log::Capture capture;
  auto t = infer_base_url(V{"https://z.example/a", "https://m.example/b"});
  CHECK(t.host == "m.example");
  CHECK_FALSE(capture.text().empty());
}

TEST_CASE("empty input is fatal") {
  CHECK_THROWS_WITH_AS(infer_base_url(V{}), "no API URLs classified", NoApiUrlsError);
}

TEST_CASE("idempotence and order independence") {
  std::mt19937 rng(8);
  const V segs{"v1", "users", "items", "7", "x.json"};
  for (int n = 0; n < 200; ++n) {
    V urls;
    for (int k = 1 + rng() % 6; k > 0; --k) {
      std::string u = "https://api.example.com";
      for (int d = rng() % 4; d > 0; --d) u += "/" + segs[rng() % segs.size()];
      urls.push_back(u);
    }
    auto b = infer_base_url(urls);
    CHECK(b.full().back() != '/');
    auto with_base = urls;
    with_base.push_back(b.full());
    CHECK(infer_base_url(with_base) == b);
    std::reverse(urls.begin(), urls.end());
    CHECK(infer_base_url(urls) == b);
  }
}

TEST_CASE("parse_base_url and residual_path") {
  auto b = parse_base_url("https://API.x.com/v1/");
  REQUIRE(b);
  CHECK(b->full() == "https://api.x.com/v1");
  CHECK(residual_path("https://api.x.com/v1/users/1?x=2", *b) == "/users/1");
  CHECK(residual_path("https://api.x.com/v1", *b) == "");
  CHECK_FALSE(residual_path("https://api.x.com/v10/users", *b));
  CHECK_FALSE(residual_path("https://other.x.com/v1/users", *b));
  CHECK_FALSE(residual_path("http://api.x.com/v1/users", *b));
  CHECK_FALSE(parse_base_url("nonsense"));
}
