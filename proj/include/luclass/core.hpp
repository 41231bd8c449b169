// Copyright 2026 The luclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace luclass {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Which of the three two-particle Hilbert spaces a coefficient matrix lives in.
enum class ParticleCase { Boson, Fermion, Distinguishable };

inline std::string_view to_string(ParticleCase c) {
    switch (c) {
        case ParticleCase::Boson: return "boson";
        case ParticleCase::Fermion: return "fermion";
        case ParticleCase::Distinguishable: return "dist";
    }
    return "?";
}

enum class ErrorKind {
    ZeroState,
    SymmetryViolation,
    NonSquareInput,
    NonFiniteEntry,
    InvalidDimension,
    DimensionMismatch,
    CaseMismatch,
    NotAntiHermitian,
    NotUnitary,
    ConvergenceFailure,
    UnsortedInput,
    InvalidInput,
    InvalidStratum,
    ParseError,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::ZeroState: return "ZeroState";
        case ErrorKind::SymmetryViolation: return "SymmetryViolation";
        case ErrorKind::NonSquareInput: return "NonSquareInput";
        case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorKind::InvalidDimension: return "InvalidDimension";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::CaseMismatch: return "CaseMismatch";
        case ErrorKind::NotAntiHermitian: return "NotAntiHermitian";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::UnsortedInput: return "UnsortedInput";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::InvalidStratum: return "InvalidStratum";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "?";
}

/// Every failure raised by the library carries one of the ErrorKind tags.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

namespace detail {

inline void require(bool ok, ErrorKind kind, const std::string& what) {
    if (!ok) throw Error(kind, what);
}

inline double frobenius(const Matrix& m) { return m.norm(); }

inline bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

}  // namespace detail
}  // namespace luclass
