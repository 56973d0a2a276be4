#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qsflow {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// frames
struct UnsupportedFrame : Error { using Error::Error; };
struct SingularFrame : Error { using Error::Error; };

// qpr
struct DimensionMismatch : Error { using Error::Error; };
struct FrameMismatch : Error { using Error::Error; };
struct NotAState : Error { using Error::Error; };
struct NotTracePreserving : Error { using Error::Error; };
struct NotAnEffect : Error { using Error::Error; };
struct NotTraceAnnihilating : Error { using Error::Error; };

// models
struct InvalidParams : Error { using Error::Error; };
struct SingularDecoherence : Error { using Error::Error; };
struct NotCPTP : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };

// witness / validation
struct NotSymmetric : Error { using Error::Error; };
struct UnsupportedModel : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };

// entropy
struct InvalidAlpha : Error { using Error::Error; };
struct DivergentSum : Error { using Error::Error; };

// config
struct ParseError : Error { using Error::Error; };

// Carries one message per offending key/line so callers can report them all at once.
struct ValidationError : Error {
    std::vector<std::string> issues;
    explicit ValidationError(std::vector<std::string> list)
        : Error(join(list)), issues(std::move(list)) {}
private:
    static std::string join(const std::vector<std::string>& list) {
        std::string out;
        for (const auto& s : list) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }
};

} // namespace qsflow
