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

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "luclass/states.hpp"

namespace luclass {

/// Moment-map image of a state, materialized as the one-particle reduced
/// matrix rho (trace 1). The traceless Hermitian matrix rho - I/N is the
/// moment map under the trace-form identification of k* with k; only its
/// spectrum enters any classification decision.
struct MomentImage {
    ParticleCase particle_case;
    Matrix rho_left;
    std::optional<Matrix> rho_right;
    /// sort_desc(eig(rho_left)) - 1/N
    RealVector q_spectrum;

    Eigen::Index n_levels() const { return rho_left.rows(); }

    RealVector probabilities() const {
        return q_spectrum.array() + 1.0 / static_cast<double>(q_spectrum.size());
    }

    Matrix traceless() const {
        const auto n = rho_left.rows();
        return rho_left - Matrix::Identity(n, n) / static_cast<double>(n);
    }
};

namespace detail {

inline RealVector sorted_desc_eigenvalues(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    RealVector w = es.eigenvalues().reverse();
    return w;
}

}  // namespace detail

inline MomentImage reduced_matrix(const QuantumState& s) {
    const Matrix& c = s.coeffs();
    const double norm2 = c.squaredNorm();
    Matrix rho = c * c.adjoint() / norm2;
    rho = (rho + rho.adjoint()) / 2.0;
    const auto n = s.n_levels();

    MomentImage out{s.particle_case(), rho, std::nullopt, RealVector()};
    if (s.particle_case() == ParticleCase::Distinguishable) {
        Matrix right = c.transpose() * c.conjugate() / norm2;
        out.rho_right = (right + right.adjoint()) / 2.0;
    }
    out.q_spectrum = detail::sorted_desc_eigenvalues(rho).array() - 1.0 / static_cast<double>(n);
    return out;
}

/// Infinity-norm distance between the sorted q-spectra of two images.
inline double spectral_distance(const MomentImage& a, const MomentImage& b) {
    detail::require(a.particle_case == b.particle_case, ErrorKind::CaseMismatch,
                    "moment images of different cases");
    detail::require(a.q_spectrum.size() == b.q_spectrum.size(), ErrorKind::DimensionMismatch,
                    "moment images of different dimension");
    return (a.q_spectrum - b.q_spectrum).cwiseAbs().maxCoeff();
}

inline bool moment_equal(const MomentImage& a, const MomentImage& b, double tol) {
    return spectral_distance(a, b) <= tol;
}

/// Is q a point of the translated probability polytope? For fermions the
/// sorted entries must also pair up, with a trailing zero probability when N
/// is odd.
inline bool polytope_membership(const RealVector& q, ParticleCase c, double tol) {
    const auto n = q.size();
    if (n < 1) return false;
    const double shift = 1.0 / static_cast<double>(n);
    RealVector p = q.array() + shift;
    if ((p.array() < -tol).any()) return false;
    if (std::abs(p.sum() - 1.0) > tol) return false;
    if (c != ParticleCase::Fermion) return true;

    std::vector<double> sorted(p.data(), p.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (Eigen::Index j = 0; j + 1 < n; j += 2)
        if (std::abs(sorted[j] - sorted[j + 1]) > tol) return false;
    if (n % 2 == 1 && std::abs(sorted[n - 1]) > tol) return false;
    return true;
}

}  // namespace luclass
