// Copyright 2026 The repro-bound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <iostream>
#include <string_view>

namespace repro {

enum class LogLevel { debug = 0, warning = 1, quiet = 2 };

inline std::atomic<LogLevel> &log_level() {
    static std::atomic<LogLevel> level{LogLevel::warning};
    return level;
}

inline void log_debug(std::string_view message) {
    if (log_level().load(std::memory_order_relaxed) <= LogLevel::debug) {
        std::cerr << "debug: " << message << '\n';
    }
}

inline void log_warning(std::string_view message) {
    if (log_level().load(std::memory_order_relaxed) <= LogLevel::warning) {
        std::cerr << "warning: " << message << '\n';
    }
}

}  // namespace repro
