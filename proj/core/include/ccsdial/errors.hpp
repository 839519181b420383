#ifndef CCSDIAL_ERRORS_HPP
#define CCSDIAL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccsdial {

/// Thrown when a state-space construction exceeds its configured cap.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(std::string what_kind, std::size_t limit)
        : std::runtime_error(what_kind + " exceeded the configured cap of " +
                             std::to_string(limit) + " states"),
          limit_(limit) {}

    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

/// Default cap on explored state sets.
inline constexpr std::size_t kDefaultStateCap = 1'000'000;

}  // namespace ccsdial

#endif  // CCSDIAL_ERRORS_HPP
