#pragma once

#include <stdexcept>
#include <string>

namespace integra {

struct DivisionByZero : std::domain_error {
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

struct NotInvertible : std::domain_error {
    explicit NotInvertible(const std::string& what) : std::domain_error(what) {}
};

struct CoordinateMismatch : std::invalid_argument {
    explicit CoordinateMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct DegenerateInput : std::invalid_argument {
    explicit DegenerateInput(const std::string& what) : std::invalid_argument(what) {}
};

struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

struct NotDivisible : std::domain_error {
    explicit NotDivisible(const std::string& what) : std::domain_error(what) {}
};

} // namespace integra
