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

#include <optional>
#include <string>
#include <vector>

#include "luclass/invariants.hpp"
#include "luclass/moment.hpp"

namespace luclass {

inline constexpr double kDefaultEquivalenceTol = 1e-8;
inline constexpr double kWitnessResidualTol = 1e-7;

struct EquivalenceVerdict {
    bool equivalent = false;
    double spectral_distance = 0.0;
    std::optional<LocalUnitary> witness;
    std::optional<double> witness_residual;
    /// e^{i phi} with witness . a = e^{i phi} b up to witness_residual.
    std::optional<Complex> witness_phase;
    std::vector<std::string> warnings;
};

namespace detail {

inline void check_comparable(const QuantumState& a, const QuantumState& b) {
    require(a.particle_case() == b.particle_case(), ErrorKind::CaseMismatch, "states belong to different cases");
    require(a.n_levels() == b.n_levels(), ErrorKind::DimensionMismatch, "states have different dimension");
}

// Best phase e^{i phi} minimizing || x - e^{i phi} y ||.
inline Complex best_phase(const Matrix& x, const Matrix& y) {
    const Complex overlap = (y.adjoint() * x).trace();
    if (std::abs(overlap) == 0.0) return {1.0, 0.0};
    return overlap / std::abs(overlap);
}

}  // namespace detail

/// Both states share a slice point S with a ~ W_a S W_a^t and b ~ W_b S W_b^t,
/// so g = W_b W_a^dagger maps a onto b up to a global phase.
inline std::pair<LocalUnitary, double> witness_from_canonical(const QuantumState& a, const QuantumState& b,
                                                              const CanonicalForm& ca, const CanonicalForm& cb,
                                                              Complex& phase_out) {
    LocalUnitary g{a.particle_case(), cb.witness_u * ca.witness_u.adjoint(), std::nullopt};
    if (ca.witness_v) g.v = *cb.witness_v * ca.witness_v->adjoint();
    // Both witnesses are in SU(N), so the product is too; strip rounding drift.
    detail::to_special_unitary(g.u);
    if (g.v) detail::to_special_unitary(*g.v);
    const QuantumState moved = apply_group_action(a, g);
    phase_out = detail::best_phase(moved.coeffs(), b.coeffs());
    const double residual = (moved.coeffs() - phase_out * b.coeffs()).norm();
    return {g, residual};
}

/// Local unitary equivalence by comparing moment spectra, which separate
/// K-orbits for two bosons, fermions or distinguishable particles. A witness
/// is attached when found; failing to build one never flips the verdict.
inline EquivalenceVerdict lu_equivalent(const QuantumState& a, const QuantumState& b,
                                        double tol = kDefaultEquivalenceTol) {
    detail::check_comparable(a, b);
    EquivalenceVerdict verdict;
    verdict.spectral_distance = spectral_distance(reduced_matrix(a), reduced_matrix(b));
    verdict.equivalent = verdict.spectral_distance <= tol;
    if (!verdict.equivalent) return verdict;

    try {
        const CanonicalForm ca = canonicalize(a);
        const CanonicalForm cb = canonicalize(b);
        Complex phase;
        auto [g, residual] = witness_from_canonical(a, b, ca, cb, phase);
        if (residual <= kWitnessResidualTol) {
            verdict.witness = std::move(g);
            verdict.witness_residual = residual;
            verdict.witness_phase = phase;
        } else {
            verdict.warnings.push_back("witness residual " + std::to_string(residual) +
                                       " above 1e-7; equivalent without witness");
        }
    } catch (const Error& e) {
        verdict.warnings.push_back(std::string("witness construction failed: ") + e.what());
    }
    return verdict;
}

/// Same orbit type (multiplicity vector and degeneracy), not the same orbit.
inline bool same_stratum(const QuantumState& a, const QuantumState& b, double cluster_tol = kDefaultClusterTol) {
    detail::check_comparable(a, b);
    return orbit_invariants(canonicalize(a), cluster_tol).d == orbit_invariants(canonicalize(b), cluster_tol).d;
}

}  // namespace luclass
