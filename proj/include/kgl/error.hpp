#pragma once

#include <stdexcept>
#include <string>

namespace kgl {

// Error with a stable machine-readable code ("DomainViolation", "NotInCone",
// ...) next to the human message. CLI diagnostics and tests key on the code.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace kgl
