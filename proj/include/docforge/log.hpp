#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace docforge::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3 };

using Sink = std::function<void(Level, std::string_view)>;

void set_level(Level level);
Level level();

// Replaces the output sink. An empty sink restores the default (stderr).
void set_sink(Sink sink);

void write(Level level, std::string_view message);

inline void debug(std::string_view m) { write(Level::Debug, m); }
inline void info(std::string_view m) { write(Level::Info, m); }
inline void warn(std::string_view m) { write(Level::Warn, m); }
inline void error(std::string_view m) { write(Level::Error, m); }

// Collects messages at or above `min` for the lifetime of the object.
class Capture {
 public:
  explicit Capture(Level min = Level::Warn);
  ~Capture();
  Capture(const Capture&) = delete;
  Capture& operator=(const Capture&) = delete;

  const std::string& text() const { return text_; }
  bool contains(std::string_view needle) const;

 private:
  std::string text_;
  Level previous_level_;
};

}  // namespace docforge::log
