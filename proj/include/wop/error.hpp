#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wop {

// Error with a stable machine-readable code ("oracle-limit", "multi-placement", ...)
// plus a human-readable detail. what() yields "code: detail".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace wop
