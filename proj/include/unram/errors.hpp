#pragma once

#include <stdexcept>
#include <string>

namespace unram {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Expression parser errors. `position` is a 0-based offset into the input.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct UnknownVariable : Error {
    explicit UnknownVariable(const std::string& name)
        : Error("unknown variable '" + name + "'") {}
};

struct DivisionByZeroPolynomial : Error {
    DivisionByZeroPolynomial() : Error("division by the zero polynomial") {}
};

struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

struct NonSquareMatrix : Error {
    NonSquareMatrix() : Error("determinant of a non-square matrix") {}
};

struct DenominatorVanishes : Error {
    DenominatorVanishes() : Error("substitution makes a denominator vanish identically") {}
};

struct ZeroInput : Error {
    ZeroInput() : Error("valuation of zero is undefined") {}
};

struct NotAUnit : Error {
    explicit NotAUnit(long long v)
        : Error("element has valuation " + std::to_string(v) + ", expected 0") {}
};

struct ZeroElement : Error {
    ZeroElement() : Error("square test of the zero residue element") {}
};

struct DegenerateForm : Error {
    DegenerateForm() : Error("diagonal form has a zero entry") {}
    explicit DegenerateForm(const std::string& msg) : Error("degenerate form: " + msg) {}
};

struct PatternMismatch : Error {
    explicit PatternMismatch(const std::string& msg)
        : Error("norm-form pattern mismatch: " + msg) {}
};

struct IdentityFails : Error {
    explicit IdentityFails(const std::string& msg)
        : Error("model identity check failed: " + msg) {}
};

struct EntryVanishesAtPoint : Error {
    explicit EntryVanishesAtPoint(const std::string& msg)
        : Error("symbol entry is not a unit at the point: " + msg) {}
};

struct InvalidPlace : Error {
    explicit InvalidPlace(const std::string& msg) : Error("invalid place: " + msg) {}
};

struct NotHomogeneousDegree2 : Error {
    NotHomogeneousDegree2() : Error("polynomial is not homogeneous of degree 2") {}
    explicit NotHomogeneousDegree2(const std::string& msg)
        : Error("not homogeneous of degree 2: " + msg) {}
};

struct ModeUnsupported : Error {
    explicit ModeUnsupported(const std::string& msg) : Error(msg) {}
};

struct FactorizationLimit : Error {
    explicit FactorizationLimit(const std::string& n)
        : Error("integer factorization limit exceeded for " + n) {}
};

}  // namespace unram
