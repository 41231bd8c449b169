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

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "luclass/core.hpp"

namespace luclass {

/// Pure state of two particles, stored as its N x N coefficient matrix C with
/// v = sum_ij C_ij e_i (x) e_j. Bosonic states have C = C^t, fermionic states
/// C = -C^t. Instances are only produced by validate() and the group action,
/// so the symmetry class and unit norm always hold.
class QuantumState {
public:
    ParticleCase particle_case() const noexcept { return case_; }
    Eigen::Index n_levels() const noexcept { return coeffs_.rows(); }
    const Matrix& coeffs() const noexcept { return coeffs_; }

private:
    QuantumState(ParticleCase c, Matrix m) : case_(c), coeffs_(std::move(m)) {}

    ParticleCase case_;
    Matrix coeffs_;

    friend QuantumState validate(const Matrix&, ParticleCase, double);
    friend struct detail_state_access;
};

/// Element of K = SU(N) (bosons, fermions) or K x K (distinguishable).
struct LocalUnitary {
    ParticleCase particle_case;
    Matrix u;
    std::optional<Matrix> v;
};

/// Element of the Lie algebra su(N) or su(N) + su(N).
struct AlgebraElement {
    Matrix left;
    std::optional<Matrix> right;
};

/// Internal escape hatch used by operations that already guarantee the
/// invariants (group action, samplers).
struct detail_state_access {
    static QuantumState make(ParticleCase c, Matrix m) { return QuantumState(c, std::move(m)); }
};

namespace detail {

inline Matrix project_to_case(const Matrix& raw, ParticleCase c) {
    switch (c) {
        case ParticleCase::Boson: return (raw + raw.transpose()) / 2.0;
        case ParticleCase::Fermion: return (raw - raw.transpose()) / 2.0;
        case ParticleCase::Distinguishable: return raw;
    }
    return raw;
}

inline double symmetry_defect(const Matrix& m, ParticleCase c) {
    switch (c) {
        case ParticleCase::Boson: return (m - m.transpose()).norm();
        case ParticleCase::Fermion: return (m + m.transpose()).norm();
        case ParticleCase::Distinguishable: return 0.0;
    }
    return 0.0;
}

inline void check_dimension(Eigen::Index n) {
    require(n >= 2, ErrorKind::InvalidDimension, "one-particle dimension must be at least 2");
}

}  // namespace detail

/// Checks shape, finiteness and symmetry class of `raw`, then returns the
/// (anti)symmetrized matrix scaled to unit Frobenius norm. The defect is
/// measured relative to the input norm: ||raw - P(raw)||_F / ||raw||_F.
inline QuantumState validate(const Matrix& raw, ParticleCase c, double tol) {
    detail::require(raw.rows() == raw.cols(), ErrorKind::NonSquareInput,
                    "coefficient matrix is " + std::to_string(raw.rows()) + "x" +
                        std::to_string(raw.cols()));
    detail::check_dimension(raw.rows());
    detail::require(detail::all_finite(raw), ErrorKind::NonFiniteEntry, "matrix has NaN or Inf entries");
    const double norm = raw.norm();
    detail::require(norm > 0.0, ErrorKind::ZeroState, "coefficient matrix is zero");

    Matrix projected = detail::project_to_case(raw, c);
    const double defect = (raw - projected).norm() / norm;
    detail::require(defect <= tol, ErrorKind::SymmetryViolation,
                    "symmetry defect " + std::to_string(defect) + " exceeds tolerance for " +
                        std::string(to_string(c)));
    const double pnorm = projected.norm();
    detail::require(pnorm > 0.0, ErrorKind::ZeroState, "projected matrix is zero");
    return QuantumState(c, projected / pnorm);
}

inline void check_local_unitary(const LocalUnitary& g, double tol = 1e-10) {
    auto check_one = [tol](const Matrix& m) {
        detail::require(m.rows() == m.cols(), ErrorKind::NonSquareInput, "unitary must be square");
        const auto n = m.rows();
        const double unit_defect = (m.adjoint() * m - Matrix::Identity(n, n)).norm();
        detail::require(unit_defect <= tol, ErrorKind::NotUnitary, "u^dagger u != I");
        detail::require(std::abs(m.determinant() - Complex(1.0)) <= tol, ErrorKind::NotUnitary,
                        "det != 1");
    };
    check_one(g.u);
    if (g.particle_case == ParticleCase::Distinguishable) {
        detail::require(g.v.has_value(), ErrorKind::CaseMismatch, "distinguishable action needs a pair");
        detail::require(g.v->rows() == g.u.rows(), ErrorKind::DimensionMismatch, "u and v sizes differ");
        check_one(*g.v);
    } else {
        detail::require(!g.v.has_value(), ErrorKind::CaseMismatch, "diagonal action takes a single unitary");
    }
}

/// C -> U C U^t for bosons/fermions, C -> U C V^t for distinguishable particles.
inline QuantumState apply_group_action(const QuantumState& s, const LocalUnitary& g) {
    detail::require(g.particle_case == s.particle_case(), ErrorKind::CaseMismatch,
                    "group element and state belong to different cases");
    detail::require(g.u.rows() == s.n_levels() && g.u.cols() == s.n_levels(),
                    ErrorKind::DimensionMismatch, "unitary size does not match state");
    const Matrix& c = s.coeffs();
    if (s.particle_case() == ParticleCase::Distinguishable) {
        detail::require(g.v.has_value(), ErrorKind::CaseMismatch, "distinguishable action needs a pair");
        detail::require(g.v->rows() == s.n_levels() && g.v->cols() == s.n_levels(),
                        ErrorKind::DimensionMismatch, "second unitary size does not match state");
        return detail_state_access::make(s.particle_case(), g.u * c * g.v->transpose());
    }
    Matrix out = g.u * c * g.u.transpose();
    // Congruence preserves the class exactly in exact arithmetic; re-project
    // so rounding never leaks a symmetric part into a fermion.
    return detail_state_access::make(s.particle_case(), detail::project_to_case(out, s.particle_case()));
}

/// Linearized action xi.C = xi C + C xi^t (or xi1 C + C xi2^t).
inline Matrix apply_algebra_action(const QuantumState& s, const AlgebraElement& xi) {
    const auto n = s.n_levels();
    auto check = [n](const Matrix& m) {
        detail::require(m.rows() == n && m.cols() == n, ErrorKind::DimensionMismatch,
                        "algebra element size does not match state");
        detail::require((m + m.adjoint()).norm() / 2.0 <= 1e-10, ErrorKind::NotAntiHermitian,
                        "algebra element has a Hermitian part");
    };
    check(xi.left);
    const Matrix& c = s.coeffs();
    if (s.particle_case() == ParticleCase::Distinguishable) {
        detail::require(xi.right.has_value(), ErrorKind::CaseMismatch, "distinguishable action needs a pair");
        check(*xi.right);
        return xi.left * c + c * xi.right->transpose();
    }
    detail::require(!xi.right.has_value(), ErrorKind::CaseMismatch, "diagonal action takes a single element");
    return xi.left * c + c * xi.left.transpose();
}

namespace detail {

inline Matrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

// Haar-random element of SU(n): QR of a Ginibre matrix, phases of R's
// diagonal moved into Q, then the determinant divided out.
inline Matrix haar_special_unitary(std::mt19937_64& rng, Eigen::Index n) {
    Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, n));
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) q.col(j) *= d / a;
    }
    const Complex det = q.determinant();
    q *= std::polar(1.0, -std::arg(det) / static_cast<double>(n));
    return q;
}

}  // namespace detail

inline QuantumState random_state(ParticleCase c, Eigen::Index n, std::uint64_t seed) {
    detail::check_dimension(n);
    std::mt19937_64 rng(seed);
    Matrix m = detail::project_to_case(detail::gaussian_matrix(rng, n), c);
    return detail_state_access::make(c, m / m.norm());
}

inline LocalUnitary random_local_unitary(ParticleCase c, Eigen::Index n, std::uint64_t seed) {
    detail::check_dimension(n);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    LocalUnitary g{c, detail::haar_special_unitary(rng, n), std::nullopt};
    if (c == ParticleCase::Distinguishable) g.v = detail::haar_special_unitary(rng, n);
    return g;
}

/// Exponential map of the Lie algebra into the group.
inline LocalUnitary exp_local(ParticleCase c, const AlgebraElement& xi, double t) {
    auto expm = [t](const Matrix& m) {
        // Anti-Hermitian: diagonalize the Hermitian matrix i*m.
        Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0.0, 1.0) * m);
        const RealVector& w = es.eigenvalues();
        Eigen::VectorXcd phases(w.size());
        for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -t * w(k));
        return Matrix(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
    };
    LocalUnitary g{c, expm(xi.left), std::nullopt};
    if (xi.right) g.v = expm(*xi.right);
    return g;
}

/// Random element of su(N) (or a pair), deterministic per seed.
inline AlgebraElement random_algebra_element(ParticleCase c, Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x51ed270b27a1f0e3ULL);
    auto one = [&rng, n]() {
        Matrix g = detail::gaussian_matrix(rng, n);
        Matrix a = (g - g.adjoint()) / 2.0;
        a -= (a.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
        return a;
    };
    AlgebraElement xi{one(), std::nullopt};
    if (c == ParticleCase::Distinguishable) xi.right = one();
    return xi;
}

}  // namespace luclass
