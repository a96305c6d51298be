#pragma once
#include <stdexcept>
#include <string>

namespace occ {

// All library failures derive from Error; kind() is a stable machine tag.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define OCC_ERROR(Name)                                                  \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}     \
    }

OCC_ERROR(MalformedSpec);
OCC_ERROR(InadmissibleWord);
OCC_ERROR(WordTooLong);
OCC_ERROR(NotFound);
OCC_ERROR(NoPair);
OCC_ERROR(NoSynchronizingSymbols);
OCC_ERROR(NotStabilized);
OCC_ERROR(StructureViolation);
OCC_ERROR(NotWellDefined);
OCC_ERROR(UnsupportedLevel);
OCC_ERROR(CrosscheckFailure);
OCC_ERROR(UsageError);
OCC_ERROR(ParseError);
OCC_ERROR(SchemaError);

#undef OCC_ERROR

}  // namespace occ
