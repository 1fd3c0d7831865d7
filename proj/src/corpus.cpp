#include "docforge/corpus.hpp"

#include <iconv.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "docforge/error.hpp"
#include "docforge/html.hpp"
#include "docforge/http.hpp"
#include "docforge/log.hpp"
#include "docforge/url.hpp"

namespace docforge {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kUserAgent = "docforge/0.1 (API documentation extractor)";

std::string sniff_meta_charset(std::string_view bytes) {
  static const std::regex meta(R"re(<meta[^>]*charset\s*=\s*["']?\s*([A-Za-z0-9_.:\-]+))re",
                               std::regex::icase);
  auto head = std::string(bytes.substr(0, 4096));
  std::smatch m;
  if (std::regex_search(head, m, meta)) return to_lower(m[1].str());
  return {};
}

// Length of the valid UTF-8 sequence at `i`, or 0.
std::size_t utf8_sequence(std::string_view s, std::size_t i) {
  auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return 1;
  std::size_t len = 0;
  std::uint32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    min = 0x10000;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  std::uint32_t cp = b0 & (0x7F >> len);
  for (std::size_t k = 1; k < len; ++k) {
    auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

std::string sanitize_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (auto len = utf8_sequence(s, i)) {
      out.append(s.substr(i, len));
      i += len;
    } else {
      out += "\xEF\xBF\xBD";
      ++i;
    }
  }
  return out;
}

std::optional<std::string> convert_to_utf8(std::string_view bytes, const std::string& charset) {
  iconv_t cd = iconv_open("UTF-8", charset.c_str());
  if (cd == reinterpret_cast<iconv_t>(-1)) return std::nullopt;
  std::string out;
  std::string input(bytes);
  char* in_ptr = input.data();
  std::size_t in_left = input.size();
  std::string buffer(4096, '\0');
  while (in_left > 0) {
    char* out_ptr = buffer.data();
    std::size_t out_left = buffer.size();
    std::size_t rc = iconv(cd, &in_ptr, &in_left, &out_ptr, &out_left);
    out.append(buffer.data(), buffer.size() - out_left);
    if (rc == static_cast<std::size_t>(-1)) {
      if (errno == E2BIG) continue;
      // EILSEQ or EINVAL: substitute and skip one byte.
      out += "\xEF\xBF\xBD";
      ++in_ptr;
      --in_left;
      iconv(cd, nullptr, nullptr, nullptr, nullptr);
    }
  }
  iconv_close(cd);
  return out;
}

bool is_utf8_alias(std::string_view charset) {
  return charset.empty() || charset == "utf-8" || charset == "utf8" || charset == "us-ascii" ||
         charset == "ascii";
}

bool has_html_extension(const fs::path& p) {
  auto ext = to_lower(p.extension().string());
  return ext == ".html" || ext == ".htm";
}

std::string file_url_for(const std::string& relative) {
  std::string out = "file:///";
  for (char c : relative) {
    if (c == ' ') {
      out += "%20";
    } else {
      out += c;
    }
  }
  return out;
}

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool looks_like_html(const std::string& content_type) {
  if (content_type.empty()) return true;
  auto lower = to_lower(content_type);
  return lower.find("html") != std::string::npos || lower.find("text/plain") != std::string::npos;
}

std::string visit_key(const std::string& url) {
  auto parsed = parse_url(url);
  if (!parsed) return url;
  Url u = *parsed;
  u.host = to_lower(u.host);
  if (u.port == default_port(u.scheme)) u.port = -1;
  if (u.path.empty()) u.path = "/";
  u.has_fragment = false;
  u.fragment.clear();
  return u.to_string();
}

}  // namespace

std::string default_user_agent() {
  if (const char* env = std::getenv("DOCFORGE_USER_AGENT"); env && *env) return env;
  return std::string(kUserAgent);
}

std::string cache_file_name(std::string_view url) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : url) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << hash << ".html";
  return ss.str();
}

std::string decode_html_bytes(std::string_view bytes, std::string_view transport_charset) {
  std::string charset = sniff_meta_charset(bytes);
  if (charset.empty()) charset = to_lower(transport_charset);
  if (is_utf8_alias(charset)) return sanitize_utf8(bytes);
  if (auto converted = convert_to_utf8(bytes, charset)) return sanitize_utf8(*converted);
  log::warn("unknown charset '" + charset + "', decoding as UTF-8");
  return sanitize_utf8(bytes);
}

std::vector<Page> load_dir(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error("input directory not found: " + dir.string());

  std::vector<std::pair<std::string, fs::path>> files;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (it->is_regular_file(ec) && has_html_extension(it->path())) {
      files.emplace_back(fs::relative(it->path(), dir).generic_string(), it->path());
    }
  }
  if (ec) throw Error("cannot read directory " + dir.string() + ": " + ec.message());
  if (files.empty()) throw Error("no .html or .htm files in " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<Page> pages;
  for (const auto& [relative, full] : files) {
    auto bytes = read_file(full);
    if (!bytes) {
      log::warn("skipping unreadable file " + relative);
      continue;
    }
    if (bytes->find('\0') != std::string::npos) {
      log::warn("skipping undecodable file " + relative);
      continue;
    }
    Page page;
    page.url = file_url_for(relative);
    page.html = decode_html_bytes(*bytes);
    page.fetch_order = pages.size();
    pages.push_back(std::move(page));
  }
  if (pages.empty()) throw Error("no decodable pages in " + dir.string());
  return pages;
}

std::vector<std::string> extract_links(const Page& page) {
  auto doc = html::Document::parse(page.html);
  std::vector<std::string> links;
  for (html::NodeId id = 0; id < doc.size(); ++id) {
    const auto& node = doc.node(id);
    if (node.kind != html::NodeKind::Element || node.tag != "a") continue;
    auto href = doc.attribute(id, "href");
    if (!href) continue;
    if (auto resolved = resolve_reference(page.url, *href)) links.push_back(*resolved);
  }
  return links;
}

std::vector<Page> crawl(const CrawlConfig& config) {
  auto seed = parse_url(config.seed);
  if (!seed || (seed->scheme != "http" && seed->scheme != "https")) {
    throw Error("seed is not an absolute http(s) URL: " + config.seed);
  }
  if (config.max_pages == 0) throw Error("max_pages must be at least 1");
  const std::string seed_host = to_lower(seed->host);

  http::GetOptions options;
  options.timeout = config.timeout;
  options.user_agent = config.user_agent.empty() ? default_user_agent() : config.user_agent;
  if (config.cache_dir) fs::create_directories(*config.cache_dir);

  struct Pending {
    std::string url;
    std::size_t depth;
  };
  std::deque<Pending> frontier{{config.seed, 0}};
  std::unordered_set<std::string> seen{visit_key(config.seed)};
  std::vector<Page> pages;
  bool fetched_any = false;

  while (!frontier.empty() && pages.size() < config.max_pages) {
    Pending next = std::move(frontier.front());
    frontier.pop_front();
    const bool is_seed = pages.empty() && !fetched_any;

    std::optional<std::string> html_text;
    fs::path cache_path;
    if (config.cache_dir) {
      cache_path = *config.cache_dir / cache_file_name(next.url);
      if (fs::exists(cache_path)) html_text = read_file(cache_path);
    }
    if (!html_text) {
      if (fetched_any && config.delay.count() > 0) std::this_thread::sleep_for(config.delay);
      fetched_any = true;
      std::string error;
      auto response = http::get(next.url, options, &error);
      std::string problem;
      if (!response) {
        problem = error;
      } else if (response->status >= 400) {
        problem = "HTTP " + std::to_string(response->status);
      } else if (!looks_like_html(response->content_type)) {
        problem = "not HTML (" + response->content_type + ")";
      }
      if (!problem.empty()) {
        if (is_seed) throw Error("cannot fetch seed " + next.url + ": " + problem);
        log::warn("skipping " + next.url + ": " + problem);
        continue;
      }
      html_text = decode_html_bytes(response->body, http::charset_of(response->content_type));
      if (config.cache_dir) {
        std::ofstream out(cache_path, std::ios::binary);
        out << *html_text;
      }
    }
    fetched_any = true;

    Page page;
    page.url = next.url;
    page.html = std::move(*html_text);
    page.fetch_order = pages.size();

    if (next.depth < config.max_depth) {
      for (auto& link : extract_links(page)) {
        auto parsed = parse_url(link);
        if (!parsed || (parsed->scheme != "http" && parsed->scheme != "https")) continue;
        if (to_lower(parsed->host) != seed_host) continue;
        if (seen.insert(visit_key(link)).second) frontier.push_back({link, next.depth + 1});
      }
    }
    log::debug("fetched " + page.url);
    pages.push_back(std::move(page));
  }
  return pages;
}

}  // namespace docforge
