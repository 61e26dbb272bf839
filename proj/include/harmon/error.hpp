#pragma once

#include <stdexcept>
#include <string>

namespace harmon {

// Malformed input data: image files, .cube text, config files. The CLI maps
// this (and std::invalid_argument) to exit code 2, everything else to 1.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace harmon
