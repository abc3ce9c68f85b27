// Copyright 2026 The tomoray Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOMO_LOG_HPP_
#define TOMO_LOG_HPP_

#include <cstdio>
#include <cstdlib>
#include <cstring>

// Diagnostics go to stderr and are gated by the TOMO_LOG environment
// variable: "error" (default), "info", or "debug".

namespace tomo {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("TOMO_LOG");
    if (env == nullptr) return LogLevel::kError;
    if (std::strcmp(env, "debug") == 0) return LogLevel::kDebug;
    if (std::strcmp(env, "info") == 0) return LogLevel::kInfo;
    return LogLevel::kError;
  }();
  return level;
}

template <typename... Args>
void log_at(LogLevel level, const char* tag, const char* fmt, Args... args) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::fprintf(stderr, "[%s] ", tag);
  std::fprintf(stderr, fmt, args...);
  std::fprintf(stderr, "\n");
}

template <typename... Args>
void log_error(const char* fmt, Args... args) {
  log_at(LogLevel::kError, "error", fmt, args...);
}

template <typename... Args>
void log_info(const char* fmt, Args... args) {
  log_at(LogLevel::kInfo, "info", fmt, args...);
}

template <typename... Args>
void log_debug(const char* fmt, Args... args) {
  log_at(LogLevel::kDebug, "debug", fmt, args...);
}

}  // namespace tomo

#endif  // TOMO_LOG_HPP_
