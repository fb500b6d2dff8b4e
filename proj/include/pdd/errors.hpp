#pragma once

#include <stdexcept>
#include <string>

namespace pdd {

// Stable error identifiers; the CLI maps DataError -> exit 2 and
// InternalError -> exit 3.
enum class ErrorCode {
    ParseFailure,
    DuplicateAttribute,
    UnknownKind,
    HeaderMismatch,
    InvalidValue,
    EmptyFile,
    TooFewDistinct,
    UnmappedLevel,
    MissingBinSpec,
    EmptyDataset,
    ZeroSupportCondition,
    NumericInput,
    UnknownTarget,
    UnknownAv,
    InconsistentInputs,
    BadKnowledgeBase,
    BadGeneratorSpec,
};

const char* error_code_name(ErrorCode code);

class DataError : public std::runtime_error {
public:
    DataError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what)
        : std::logic_error("internal invariant violated: " + what) {}
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseFailure: return "ParseFailure";
        case ErrorCode::DuplicateAttribute: return "DuplicateAttribute";
        case ErrorCode::UnknownKind: return "UnknownKind";
        case ErrorCode::HeaderMismatch: return "HeaderMismatch";
        case ErrorCode::InvalidValue: return "InvalidValue";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::TooFewDistinct: return "TooFewDistinct";
        case ErrorCode::UnmappedLevel: return "UnmappedLevel";
        case ErrorCode::MissingBinSpec: return "MissingBinSpec";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::ZeroSupportCondition: return "ZeroSupportCondition";
        case ErrorCode::NumericInput: return "NumericInput";
        case ErrorCode::UnknownTarget: return "UnknownTarget";
        case ErrorCode::UnknownAv: return "UnknownAv";
        case ErrorCode::InconsistentInputs: return "InconsistentInputs";
        case ErrorCode::BadKnowledgeBase: return "BadKnowledgeBase";
        case ErrorCode::BadGeneratorSpec: return "BadGeneratorSpec";
    }
    return "UnknownError";
}

}  // namespace pdd
