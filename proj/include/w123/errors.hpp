#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace w123 {

// Base of every error the library throws. `code()` is a stable
// machine-readable tag used in JSON error reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("ParseError", "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class SelfLoopError : public Error {
public:
    SelfLoopError(std::size_t line, std::uint64_t vertex)
        : Error("SelfLoop", "line " + std::to_string(line) + ": self-loop at vertex " +
                                std::to_string(vertex)),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

// A resample-until-valid loop ran out of budget. `violators` holds the ids
// (vertices) still violating their constraint when the budget ran out.
class RetryExhausted : public Error {
public:
    RetryExhausted(std::string stage, std::vector<std::uint32_t> violators, const std::string& what)
        : Error("RetryExhausted", stage + ": " + what),
          stage_(std::move(stage)),
          violators_(std::move(violators)) {}

    const std::string& stage() const noexcept { return stage_; }
    const std::vector<std::uint32_t>& violators() const noexcept { return violators_; }

private:
    std::string stage_;
    std::vector<std::uint32_t> violators_;
};

class InfeasibleProfile : public Error {
public:
    explicit InfeasibleProfile(const std::string& what) : Error("InfeasibleProfile", what) {}
};

class DegenerateLength : public Error {
public:
    DegenerateLength(std::uint32_t vertex, const std::string& what)
        : Error("DegenerateLength", what), vertex_(vertex) {}

    std::uint32_t vertex() const noexcept { return vertex_; }

private:
    std::uint32_t vertex_;
};

class NoValidAddition : public Error {
public:
    NoValidAddition(std::uint32_t vertex, const std::string& what)
        : Error("NoValidAddition", what), vertex_(vertex) {}

    std::uint32_t vertex() const noexcept { return vertex_; }

private:
    std::uint32_t vertex_;
};

class InsufficientFW : public Error {
public:
    InsufficientFW(std::uint32_t vertex, const std::string& what)
        : Error("InsufficientFW", what), vertex_(vertex) {}

    std::uint32_t vertex() const noexcept { return vertex_; }

private:
    std::uint32_t vertex_;
};

class NoValidPair : public Error {
public:
    NoValidPair(std::uint32_t vertex, const std::string& what)
        : Error("NoValidPair", what), vertex_(vertex) {}

    std::uint32_t vertex() const noexcept { return vertex_; }

private:
    std::uint32_t vertex_;
};

class InternalInconsistency : public Error {
public:
    explicit InternalInconsistency(const std::string& what) : Error("InternalInconsistency", what) {}
};

}  // namespace w123
