#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evalgap {

// Library failures carry a short stable code ("axiom2", "grid", "oracle_dims", ...)
// next to the human-readable message; the CLI maps codes onto exit statuses and
// tests pin them.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail.empty() ? code : code + ": " + detail),
          code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

protected:
    struct Verbatim {};
    Error(Verbatim, std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

private:
    std::string code_;
};

struct Violation {
    std::string code;
    std::string detail;
};

// Thrown when a record fails validation; keeps every violation found, not just
// the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : Error(Verbatim{}, violations.empty() ? "invalid" : violations.front().code,
                join(violations)),
          violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<Violation>& violations) {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v.code;
            if (!v.detail.empty()) {
                out += " (" + v.detail + ")";
            }
        }
        return out;
    }

    std::vector<Violation> violations_;
};

}  // namespace evalgap
