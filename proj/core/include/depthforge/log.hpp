#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace depthforge::log {

enum class Level { Error = 0, Info = 1, Debug = 2 };

inline Level threshold() {
  static Level lvl = [] {
    const char* env = std::getenv("DEPTH_FORGE_LOG");
    if (env == nullptr) return Level::Error;
    if (std::strcmp(env, "debug") == 0) return Level::Debug;
    if (std::strcmp(env, "info") == 0) return Level::Info;
    return Level::Error;
  }();
  return lvl;
}

inline void emit(Level lvl, const std::string& msg) {
  if (static_cast<int>(lvl) > static_cast<int>(threshold())) return;
  const char* tag = lvl == Level::Error ? "error" : lvl == Level::Info ? "info" : "debug";
  std::fprintf(stderr, "[depthforge %s] %s\n", tag, msg.c_str());
}

inline void error(const std::string& msg) { emit(Level::Error, msg); }
inline void info(const std::string& msg) { emit(Level::Info, msg); }
inline void debug(const std::string& msg) { emit(Level::Debug, msg); }

}  // namespace depthforge::log
