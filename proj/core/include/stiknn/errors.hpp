#pragma once

#include <stdexcept>
#include <string>

namespace stiknn {

// Violated precondition or malformed argument. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// File or network failure. The CLI maps this to exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stiknn
