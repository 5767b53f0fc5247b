#pragma once

#include <stdexcept>
#include <string>

namespace sdc {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind { validation, domain, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

inline void check(bool condition, const std::string& message) {
    if (!condition) {
        throw DomainError(message);
    }
}

}  // namespace sdc
