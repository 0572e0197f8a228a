#pragma once

#include <stdexcept>
#include <string>

namespace vlcgsm {

// Invalid configuration or input geometry. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration/search budget exceeded. Maps to CLI exit code 3.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vlcgsm
