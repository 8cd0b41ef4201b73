#pragma once

#include <stdexcept>
#include <string>

namespace ktj {

struct KtjError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// qarith
struct DivisionByZero : KtjError { using KtjError::KtjError; };
struct PoleAtPoint : KtjError { using KtjError::KtjError; };
struct PrecisionExhausted : KtjError { using KtjError::KtjError; };

// qsymbols
struct DomainError : KtjError { using KtjError::KtjError; };
struct InadmissibleTriple : KtjError { using KtjError::KtjError; };

// ktgmodel
struct ParseError : KtjError {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : KtjError(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};
struct UnknownId : KtjError {
    int line = 0;
    UnknownId(const std::string& msg, int line_ = 0)
        : KtjError(line_ > 0 ? msg + " (line " + std::to_string(line_) + ")" : msg), line(line_) {}
};
struct BadTarget : KtjError { using KtjError::KtjError; };
struct UnzipLoopEdge : KtjError { using KtjError::KtjError; };
struct UnzipCircle : KtjError { using KtjError::KtjError; };

// tloracle
struct NotClosed : KtjError { using KtjError::KtjError; };
struct TooLarge : KtjError { using KtjError::KtjError; };

// jonesengine
struct TwistedUnzip : KtjError { using KtjError::KtjError; };
struct NotReducible : KtjError { using KtjError::KtjError; };
struct BudgetExceeded : KtjError { using KtjError::KtjError; };
struct UnexpectedPole : KtjError { using KtjError::KtjError; };
struct NotAugmented : KtjError { using KtjError::KtjError; };

// octgeom
struct GluingConflict : KtjError { using KtjError::KtjError; };

} // namespace ktj
