#pragma once

#include <stdexcept>
#include <string>

namespace altrel {

// Failure classes that map to distinct process exit codes, so scripted runs
// can tell apart "this instance is bad" from "we gave up" from "too big".

struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

struct retry_cap_error : std::runtime_error {
    explicit retry_cap_error(const std::string& what) : std::runtime_error(what) {}
};

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int EXIT_DEGENERATE = 2;
inline constexpr int EXIT_RETRY_CAP  = 3;
inline constexpr int EXIT_BUDGET    = 4;

} // namespace altrel
