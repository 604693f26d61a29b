#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilmoore {

/// Base class for all mathematical / contract failures raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- exact linear algebra ---------------------------------------------------

struct ShapeMismatch : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct NotASublattice : Error {
    using Error::Error;
};

struct RankMismatch : Error {
    using Error::Error;
};

struct NotFullRank : Error {
    using Error::Error;
};

// -- Lie algebra ------------------------------------------------------------

struct JacobiViolation : Error {
    std::size_t i, j, k;
    JacobiViolation(std::size_t i_, std::size_t j_, std::size_t k_, const std::string& what_)
        : Error(what_), i(i_), j(j_), k(k_) {}
};

struct NotNilpotent : Error {
    using Error::Error;
};

struct StepTooLarge : Error {
    using Error::Error;
};

// -- lattice subgroups ------------------------------------------------------

struct NotClosed : Error {
    /// Offending word, as signed 1-based generator indices (-k means inverse of generator k).
    std::vector<int> witness;
    NotClosed(std::vector<int> witness_, const std::string& what_)
        : Error(what_), witness(std::move(witness_)) {}
};

struct NotASubalgebra : Error {
    using Error::Error;
};

struct ChainNotFound : Error {
    using Error::Error;
};

// -- multiplicities ---------------------------------------------------------

struct FullStabilizer : Error {
    using Error::Error;
};

struct NotInDualLattice : Error {
    using Error::Error;
};

struct EmptySpectrum : Error {
    using Error::Error;
};

// -- I/O ----------------------------------------------------------------------

struct ParseError : Error {
    std::string file;
    int line;
    ParseError(std::string file_, int line_, const std::string& what_)
        : Error(file_ + ":" + std::to_string(line_) + ": " + what_), file(std::move(file_)), line(line_) {}
};

}  // namespace nilmoore
