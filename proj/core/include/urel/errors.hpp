#pragma once

#include <stdexcept>
#include <string>

namespace urel {

// Base class for all engine errors. `code` groups errors for CLI exit codes:
// data errors map to exit 2, limit/guard errors to exit 3.
class Error : public std::runtime_error {
public:
    enum class Code { Data, Limit };

    Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

struct TypeMismatch : Error {
    explicit TypeMismatch(const std::string& what) : Error(Code::Data, what) {}
};

struct ConflictingAssignment : Error {
    explicit ConflictingAssignment(const std::string& var)
        : Error(Code::Data, "conflicting assignment for variable '" + var + "'"), variable(var) {}
    std::string variable;
};

struct NotProbabilistic : Error {
    NotProbabilistic() : Error(Code::Data, "world table carries no probabilities") {}
};

struct WorldLimitExceeded : Error {
    explicit WorldLimitExceeded(const std::string& what) : Error(Code::Limit, what) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error(Code::Data, what) {}
};

struct SyntaxError : Error {
    SyntaxError(std::size_t pos, const std::string& what)
        : Error(Code::Data, "syntax error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
    std::size_t position;
};

struct UnknownRelation : SchemaError {
    explicit UnknownRelation(const std::string& name)
        : SchemaError("unknown relation '" + name + "'") {}
};

struct UnknownAttribute : SchemaError {
    explicit UnknownAttribute(const std::string& name)
        : SchemaError("unknown attribute '" + name + "'") {}
};

struct MergeOriginError : Error {
    explicit MergeOriginError(const std::string& what) : Error(Code::Data, what) {}
};

struct AliasingError : Error {
    explicit AliasingError(const std::string& what) : Error(Code::Data, what) {}
};

struct NotReduced : Error {
    NotReduced() : Error(Code::Data, "database is not reduced") {}
};

struct NotNormalized : Error {
    NotNormalized() : Error(Code::Data, "input is not normalized (descriptor of size != 1)") {}
};

struct NotTupleLevel : Error {
    NotTupleLevel() : Error(Code::Data, "input U-relation is not tuple-level") {}
};

struct OutputGuardExceeded : Error {
    OutputGuardExceeded(std::size_t component_size, std::size_t guard)
        : Error(Code::Limit, "normalization output would exceed guard of " +
                                 std::to_string(guard) + " rows (component of " +
                                 std::to_string(component_size) + " variables)"),
          component_size(component_size) {}
    std::size_t component_size;
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(Code::Data, what) {}
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& what) : Error(Code::Data, what) {}
};

}  // namespace urel
