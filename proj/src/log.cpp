#include "docforge/log.hpp"

#include <iostream>
#include <mutex>

namespace docforge::log {
namespace {

std::mutex g_mutex;
Level g_level = Level::Info;
Sink g_sink;

std::string_view label(Level level) {
  switch (level) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warning";
    case Level::Error: return "error";
  }
  return "?";
}

}  // namespace

void set_level(Level level) {
  std::lock_guard lock(g_mutex);
  g_level = level;
}

Level level() {
  std::lock_guard lock(g_mutex);
  return g_level;
}

void set_sink(Sink sink) {
  std::lock_guard lock(g_mutex);
  g_sink = std::move(sink);
}

void write(Level level, std::string_view message) {
  std::lock_guard lock(g_mutex);
  if (level < g_level) return;
  if (g_sink) {
    g_sink(level, message);
    return;
  }
  std::cerr << "docforge: " << label(level) << ": " << message << '\n';
}

Capture::Capture(Level min) : previous_level_(level()) {
  set_level(min);
  set_sink([this](Level lvl, std::string_view m) {
    text_ += label(lvl);
    text_ += ": ";
    text_ += m;
    text_ += '\n';
  });
}

Capture::~Capture() {
  set_sink({});
  set_level(previous_level_);
}

bool Capture::contains(std::string_view needle) const {
  return text_.find(needle) != std::string::npos;
}

}  // namespace docforge::log
