#pragma once

#include <stdexcept>
#include <string>

namespace ahodge {

/**
 * Error carrying a stable kind tag ("NotShear", "BoxTooLarge", ...).
 * The CLI maps kinds to exit codes; tests match on kind().
 */
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool cond, const std::string& kind, const std::string& what)
{
    if (!cond) throw Error(kind, what);
}

}  // namespace ahodge
