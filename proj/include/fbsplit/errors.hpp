#pragma once

#include <stdexcept>
#include <string>

namespace fbsplit {

// Thrown on malformed or unreadable files.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterate leaves the finite floats.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, long iteration)
        : std::runtime_error(what), iteration_(iteration) {}
    long iteration() const noexcept { return iteration_; }

private:
    long iteration_;
};

}  // namespace fbsplit
