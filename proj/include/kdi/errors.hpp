#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kdi {

// All library errors derive from Error. The kind determines the CLI exit
// code: Validation -> 2, Solver -> 3.
class Error : public std::runtime_error {
public:
    enum class Kind { Validation, Solver };

    Error(Kind kind, std::string type, const std::string& message)
        : std::runtime_error(message), kind_(kind), type_(std::move(type)) {}

    Kind kind() const { return kind_; }
    const std::string& type() const { return type_; }

private:
    Kind kind_;
    std::string type_;
};

namespace detail {
template <Error::Kind K>
struct TypedError : Error {
    TypedError(std::string type, const std::string& message)
        : Error(K, std::move(type), message) {}
};
}  // namespace detail

using ValidationErrorBase = detail::TypedError<Error::Kind::Validation>;
using SolverErrorBase = detail::TypedError<Error::Kind::Solver>;

#define KDI_DEFINE_ERROR(Name, Base)                              \
    struct Name : Base {                                          \
        explicit Name(const std::string& message)                 \
            : Base(#Name, message) {}                             \
    }

KDI_DEFINE_ERROR(ConfigError, ValidationErrorBase);
KDI_DEFINE_ERROR(WidthNonPositive, ValidationErrorBase);
KDI_DEFINE_ERROR(GridTooNarrow, ValidationErrorBase);
KDI_DEFINE_ERROR(WindowEmpty, ValidationErrorBase);
KDI_DEFINE_ERROR(FrameMismatch, SolverErrorBase);
KDI_DEFINE_ERROR(TruncationOverflow, SolverErrorBase);
KDI_DEFINE_ERROR(NormDrift, SolverErrorBase);
KDI_DEFINE_ERROR(PopulationOutsideModel, SolverErrorBase);
KDI_DEFINE_ERROR(NoConvergence, SolverErrorBase);
KDI_DEFINE_ERROR(NoPeaksFound, SolverErrorBase);
KDI_DEFINE_ERROR(BeamUnresolved, SolverErrorBase);

#undef KDI_DEFINE_ERROR

}  // namespace kdi
