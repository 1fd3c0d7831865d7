#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace docforge {

// One documentation page. Offline pages get a synthetic file: URL built
// from their path relative to the corpus directory.
struct Page {
  std::string url;
  std::string html;  // UTF-8
  std::size_t fetch_order = 0;
};

struct CrawlConfig {
  std::string seed;
  std::size_t max_pages = 200;
  std::size_t max_depth = 3;
  std::chrono::milliseconds delay{250};
  bool same_host_only = true;  // always honored; kept for reporting
  std::optional<std::filesystem::path> cache_dir;
  std::string user_agent;  // empty: default_user_agent()
  std::chrono::milliseconds timeout{15000};
};

// Breadth-first crawl from the seed over <a href> links on the seed's host,
// links expanded in document order. Throws Error when the seed cannot be
// fetched; other failures are logged and skipped.
std::vector<Page> crawl(const CrawlConfig& config);

// All .html/.htm files under `dir` (recursively), sorted by relative path.
// Throws Error when the directory is missing or yields no page.
std::vector<Page> load_dir(const std::filesystem::path& dir);

// Absolute targets of <a href> links in document order, fragments removed,
// duplicates kept.
std::vector<std::string> extract_links(const Page& page);

// Converts raw bytes to UTF-8. A <meta> charset wins over the transport
// charset; UTF-8 is assumed otherwise. Invalid sequences become U+FFFD.
std::string decode_html_bytes(std::string_view bytes, std::string_view transport_charset = {});

// DOCFORGE_USER_AGENT if set, else a fixed descriptive string.
std::string default_user_agent();

// File name used for a URL inside --cache-dir.
std::string cache_file_name(std::string_view url);

}  // namespace docforge
