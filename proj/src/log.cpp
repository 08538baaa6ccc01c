#include "pdm/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace pdm::log {

Level threshold() {
    static Level lvl = [] {
        const char* env = std::getenv("PDM_LOG");
        if (env == nullptr) return Level::warn;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        if (std::strcmp(env, "info") == 0) return Level::info;
        return Level::warn;
    }();
    return lvl;
}

void write(Level lvl, const std::string& msg) {
    if (lvl < threshold()) return;
    const char* tag = lvl == Level::debug ? "debug" : lvl == Level::info ? "info" : "warning";
    std::fprintf(stderr, "[pdm %s] %s\n", tag, msg.c_str());
}

} // namespace pdm::log
