#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kelly {

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The closed-form and direct evaluations of a downside sum disagree.
class NumericalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid price input. `line()` is 1-based with the header on
/// line 1; 0 means the error is not tied to a line.
class IngestError : public std::runtime_error {
public:
    IngestError(std::size_t line, const std::string& detail, const std::string& source = {})
        : std::runtime_error(format(source, line, detail)), line_(line), detail_(detail) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    static std::string format(const std::string& source, std::size_t line, const std::string& detail) {
        std::string out = source.empty() ? std::string() : source + ": ";
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        return out + detail;
    }

    std::size_t line_;
    std::string detail_;
};

}  // namespace kelly
