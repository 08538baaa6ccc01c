#ifndef PDM_LOG_HPP
#define PDM_LOG_HPP

#include <string>

namespace pdm::log {

enum class Level { debug = 0, info = 1, warn = 2 };

/// Verbosity threshold, read once from the PDM_LOG environment variable
/// ("debug" or "info"; anything else means warnings only).
Level threshold();

void write(Level lvl, const std::string& msg);

inline void debug(const std::string& msg) { write(Level::debug, msg); }
inline void info(const std::string& msg) { write(Level::info, msg); }
inline void warn(const std::string& msg) { write(Level::warn, msg); }

} // namespace pdm::log

#endif
