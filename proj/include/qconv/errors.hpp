#pragma once

#include <stdexcept>
#include <string>

namespace qconv {

// Error taxonomy shared by the library and the CLI. Each code maps to a
// machine-readable string so the CLI can emit structured error JSON.
enum class ErrorCode {
    Dimension,
    Label,
    Singular,
    NoConstruction,
    Orthogonality,
    Basis,
    Structure,
    Input,
    Unitarity,
    Budget,
    SearchFailed,
    Io,
    Parse,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(ErrorCode::Dimension, w) {}
};
struct LabelError : Error {
    explicit LabelError(const std::string& w) : Error(ErrorCode::Label, w) {}
};
struct SingularError : Error {
    explicit SingularError(const std::string& w) : Error(ErrorCode::Singular, w) {}
};
struct NoConstructionError : Error {
    explicit NoConstructionError(const std::string& w) : Error(ErrorCode::NoConstruction, w) {}
};
struct OrthogonalityError : Error {
    explicit OrthogonalityError(const std::string& w) : Error(ErrorCode::Orthogonality, w) {}
};
struct BasisError : Error {
    explicit BasisError(const std::string& w) : Error(ErrorCode::Basis, w) {}
};
struct StructureError : Error {
    explicit StructureError(const std::string& w) : Error(ErrorCode::Structure, w) {}
};
struct InputError : Error {
    explicit InputError(const std::string& w) : Error(ErrorCode::Input, w) {}
};
struct UnitarityError : Error {
    explicit UnitarityError(const std::string& w) : Error(ErrorCode::Unitarity, w) {}
};
struct BudgetError : Error {
    explicit BudgetError(const std::string& w) : Error(ErrorCode::Budget, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorCode::Parse, w) {}
};

}  // namespace qconv
