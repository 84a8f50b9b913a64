#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace udcim {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A value lies outside its admissible range (weights, thresholds, tendency codes).
class DomainError : public Error {
public:
    using Error::Error;
};

// An operation was called with arguments violating its contract.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Invalid configuration (CLI flags, GA parameters, unknown algorithm names).
class ConfigError : public Error {
public:
    using Error::Error;
};

// An enumeration or emission would exceed its configured size cap.
class CapExceededError : public Error {
public:
    CapExceededError(const std::string& what, std::uint64_t requested, std::uint64_t cap)
        : Error(what), requested_(requested), cap_(cap) {}

    std::uint64_t requested() const { return requested_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t requested_;
    std::uint64_t cap_;
};

} // namespace udcim
