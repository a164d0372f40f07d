#pragma once
#include <stdexcept>
#include <string>

namespace bvk {

// Precondition / contract violations surface as bvk::error; the CLI maps
// them to exit code 2 (bad input) or 1 (failed check) depending on phase.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

} // namespace bvk
