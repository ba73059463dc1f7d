#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fclat {

/// Malformed input document (context, CSV, poset JSON). CLI exit code 2.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// A resource limit was hit (memory budget, enumeration cap). CLI exit code 3.
class capacity_error : public std::runtime_error {
public:
    capacity_error(const std::string& what, std::size_t partial_count)
        : std::runtime_error(what + " (partial count: " + std::to_string(partial_count) + ")"),
          partial_count_(partial_count) {}

    /// How many items had been produced when the limit was hit.
    std::size_t partial_count() const { return partial_count_; }

private:
    std::size_t partial_count_;
};

/// Two checkers that must agree (by a proven equivalence) disagreed.
class checker_disagreement : public std::logic_error {
public:
    explicit checker_disagreement(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fclat
