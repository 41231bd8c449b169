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

// Numerical orbit geometry, independent of the slice/fiber formulas.
//
// The fundamental vector fields of a real basis {xi_a} of k, projected
// orthogonally to the state, span the tangent space of the orbit in P(H); its
// real rank is the orbit dimension. The Fubini-Study form evaluated on the
// same fields,
//
//     Omega_ab = -i <v, [xi_a, xi_b] v> / (2 <v, v>),
//
// has the isotropy directions in its kernel, so rank(Omega) over the whole
// algebra basis is the rank of the form restricted to the orbit. The
// symplectic degeneracy is orbit_dim - rank(Omega).

#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "luclass/invariants.hpp"

namespace luclass {

inline constexpr double kDefaultRankTol = 1e-9;

struct NumericRank {
    int rank = 0;
    /// A singular value sits within a factor of 10 of the threshold.
    bool ambiguous = false;
    double threshold = 0.0;
    double smallest_kept = 0.0;
    double largest_dropped = 0.0;
};

struct OracleReport {
    int orbit_dim_numeric = 0;
    int symplectic_rank_numeric = 0;
    int degeneracy_numeric = 0;
    int formula_orbit_dim = 0;
    int formula_degeneracy = 0;
    bool agree = false;
    double rank_tolerance_used = kDefaultRankTol;
    std::vector<std::string> diagnostics;
};

/// Real basis of su(N): i(E_jj - E_j+1,j+1), E_kl - E_lk, i(E_kl + E_lk).
/// Distinguishable particles get the basis of each factor, (xi, 0) then (0, xi).
inline std::vector<AlgebraElement> algebra_basis(ParticleCase c, Eigen::Index n) {
    detail::require(n >= 2, ErrorKind::InvalidDimension, "one-particle dimension must be at least 2");
    const Complex I(0.0, 1.0);
    std::vector<Matrix> su;
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        Matrix m = Matrix::Zero(n, n);
        m(j, j) = I;
        m(j + 1, j + 1) = -I;
        su.push_back(m);
    }
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = k + 1; l < n; ++l) {
            Matrix re = Matrix::Zero(n, n);
            re(k, l) = 1.0;
            re(l, k) = -1.0;
            su.push_back(re);
            Matrix im = Matrix::Zero(n, n);
            im(k, l) = I;
            im(l, k) = I;
            su.push_back(im);
        }
    std::vector<AlgebraElement> out;
    if (c != ParticleCase::Distinguishable) {
        for (auto& m : su) out.push_back({m, std::nullopt});
        return out;
    }
    const Matrix zero = Matrix::Zero(n, n);
    for (auto& m : su) out.push_back({m, zero});
    for (auto& m : su) out.push_back({zero, m});
    return out;
}

namespace detail {

// Threshold: rank_tol * max(largest singular value, 1). The floor keeps a
// numerically zero matrix (e.g. Omega on a Lagrangian orbit) at rank 0.
inline NumericRank thresholded_rank(const RealVector& singular_values, double rank_tol) {
    NumericRank r;
    const double top = singular_values.size() ? singular_values.maxCoeff() : 0.0;
    r.threshold = rank_tol * std::max(top, 1.0);
    r.smallest_kept = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
        const double s = singular_values(i);
        if (s > r.threshold) {
            ++r.rank;
            r.smallest_kept = std::min(r.smallest_kept, s);
        } else {
            r.largest_dropped = std::max(r.largest_dropped, s);
        }
        if (s > r.threshold / 10.0 && s < r.threshold * 10.0) r.ambiguous = true;
    }
    return r;
}

inline Complex hermitian_inner(const Matrix& x, const Matrix& y) {
    return (x.conjugate().array() * y.array()).sum();
}

inline std::vector<Matrix> fundamental_fields(const QuantumState& s, const std::vector<AlgebraElement>& basis) {
    std::vector<Matrix> fields;
    fields.reserve(basis.size());
    for (const auto& xi : basis) fields.push_back(apply_algebra_action(s, xi));
    return fields;
}

}  // namespace detail

inline NumericRank orbit_rank_numeric(const QuantumState& s, double rank_tol = kDefaultRankTol) {
    const Matrix& c = s.coeffs();
    const auto basis = algebra_basis(s.particle_case(), s.n_levels());
    const auto fields = detail::fundamental_fields(s, basis);
    const Eigen::Index entries = c.size();
    RealMatrix tangent(2 * entries, static_cast<Eigen::Index>(fields.size()));
    for (std::size_t a = 0; a < fields.size(); ++a) {
        // Projection orthogonal to the state: tangent space of P(H) at [v].
        const Matrix t = fields[a] - detail::hermitian_inner(c, fields[a]) * c;
        const Eigen::Map<const Eigen::VectorXcd> flat(t.data(), entries);
        tangent.col(static_cast<Eigen::Index>(a)) << flat.real(), flat.imag();
    }
    Eigen::JacobiSVD<RealMatrix> svd(tangent);
    return detail::thresholded_rank(svd.singularValues(), rank_tol);
}

inline int orbit_dimension_numeric(const QuantumState& s, double rank_tol = kDefaultRankTol) {
    return orbit_rank_numeric(s, rank_tol).rank;
}

/// Omega_ab = -i <v, [xi_a, xi_b] v> / 2 with <v, v> = 1, the commutator
/// taken in the represented action on coefficient matrices.
inline RealMatrix symplectic_matrix(const QuantumState& s) {
    const Matrix& c = s.coeffs();
    const auto basis = algebra_basis(s.particle_case(), s.n_levels());
    const auto fields = detail::fundamental_fields(s, basis);
    const auto dim = static_cast<Eigen::Index>(basis.size());
    const Complex I(0.0, 1.0);
    const double norm2 = c.squaredNorm();
    RealMatrix omega = RealMatrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        const QuantumState field_a = detail_state_access::make(s.particle_case(), fields[static_cast<std::size_t>(a)]);
        for (Eigen::Index b = a + 1; b < dim; ++b) {
            const QuantumState field_b =
                detail_state_access::make(s.particle_case(), fields[static_cast<std::size_t>(b)]);
            const Matrix commutator = apply_algebra_action(field_b, basis[static_cast<std::size_t>(a)]) -
                                      apply_algebra_action(field_a, basis[static_cast<std::size_t>(b)]);
            const Complex value = -I * detail::hermitian_inner(c, commutator) / (2.0 * norm2);
            omega(a, b) = value.real();
            omega(b, a) = -value.real();
        }
    }
    return omega;
}

inline NumericRank symplectic_rank_detail(const QuantumState& s, double rank_tol = kDefaultRankTol) {
    Eigen::JacobiSVD<RealMatrix> svd(symplectic_matrix(s));
    return detail::thresholded_rank(svd.singularValues(), rank_tol);
}

inline int symplectic_rank_numeric(const QuantumState& s, double rank_tol = kDefaultRankTol) {
    return symplectic_rank_detail(s, rank_tol).rank;
}

/// Compares numerically measured orbit dimension and degeneracy with the
/// values predicted from the state's stratum.
inline OracleReport oracle_check(const QuantumState& s, double rank_tol = kDefaultRankTol,
                                 double cluster_tol = kDefaultClusterTol) {
    OracleReport r;
    r.rank_tolerance_used = rank_tol;
    const NumericRank orbit = orbit_rank_numeric(s, rank_tol);
    const NumericRank sympl = symplectic_rank_detail(s, rank_tol);
    r.orbit_dim_numeric = orbit.rank;
    r.symplectic_rank_numeric = sympl.rank;
    r.degeneracy_numeric = orbit.rank - sympl.rank;

    const OrbitInvariants inv = orbit_invariants(canonicalize(s), cluster_tol);
    r.formula_orbit_dim = inv.orbit_dim;
    r.formula_degeneracy = inv.degeneracy_D;

    r.agree = r.orbit_dim_numeric == r.formula_orbit_dim && r.degeneracy_numeric == r.formula_degeneracy;
    if (orbit.ambiguous) {
        r.agree = false;
        r.diagnostics.push_back("RankAmbiguity: orbit tangent singular value near threshold");
    }
    if (sympl.ambiguous) {
        r.agree = false;
        r.diagnostics.push_back("RankAmbiguity: symplectic form singular value near threshold");
    }
    if (sympl.rank % 2 != 0) r.diagnostics.push_back("symplectic rank is odd");
    if (r.orbit_dim_numeric != r.formula_orbit_dim)
        r.diagnostics.push_back("orbit dimension: numeric " + std::to_string(r.orbit_dim_numeric) + " vs formula " +
                                std::to_string(r.formula_orbit_dim));
    if (r.degeneracy_numeric != r.formula_degeneracy)
        r.diagnostics.push_back("degeneracy: numeric " + std::to_string(r.degeneracy_numeric) + " vs formula " +
                                std::to_string(r.formula_degeneracy));
    return r;
}

// ---------------------------------------------------------------------------
// Three qubits: equal single-site spectra without local unitary equivalence.

/// Amplitudes a_ijk stored at index 4i + 2j + k.
struct ThreeQubitState {
    std::array<Complex, 8> amp{};

    Complex operator()(int i, int j, int k) const { return amp[static_cast<std::size_t>(4 * i + 2 * j + k)]; }
    Complex& operator()(int i, int j, int k) { return amp[static_cast<std::size_t>(4 * i + 2 * j + k)]; }
};

/// 4 |Det a|, with Det the Cayley hyperdeterminant of the 2x2x2 tensor.
inline double three_tangle(const ThreeQubitState& s) {
    auto a = [&s](int i, int j, int k) { return s(i, j, k); };
    const Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
                       a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                       a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
                       a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                       a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    const Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                       a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

/// Reduced density matrix of one qubit (site 0, 1 or 2).
inline Eigen::Matrix2cd single_site_rho(const ThreeQubitState& s, int site) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int r = 0; r < 2; ++r)
                for (int t = 0; t < 2; ++t) {
                    Complex ax, ay;
                    switch (site) {
                        case 0: ax = s(x, r, t); ay = s(y, r, t); break;
                        case 1: ax = s(r, x, t); ay = s(r, y, t); break;
                        default: ax = s(r, t, x); ay = s(r, t, y); break;
                    }
                    rho(x, y) += ax * std::conj(ay);
                }
    return rho;
}

inline Eigen::Vector2d single_site_spectrum(const ThreeQubitState& s, int site) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(single_site_rho(s, site), Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
}

struct CounterexampleReport {
    ThreeQubitState x1;
    ThreeQubitState x2;
    std::array<Eigen::Vector2d, 3> spectra_x1;
    std::array<Eigen::Vector2d, 3> spectra_x2;
    double max_spectral_difference = 0.0;
    double tangle_x1 = 0.0;
    double tangle_x2 = 0.0;
    bool spectra_equal = false;
    bool orbits_distinct = false;
    std::string conclusion;
};

/// x1 = sqrt(2/3)|000> + sqrt(1/3)|111> and the W state x2 have identical
/// single-site spectra (2/3, 1/3) but different three-tangle (8/9 vs 0), so
/// they lie in different orbits with the same moment image.
inline CounterexampleReport counterexample_demo() {
    CounterexampleReport r;
    r.x1(0, 0, 0) = std::sqrt(2.0 / 3.0);
    r.x1(1, 1, 1) = std::sqrt(1.0 / 3.0);
    const double w = 1.0 / std::sqrt(3.0);
    r.x2(1, 0, 0) = w;
    r.x2(0, 1, 0) = w;
    r.x2(0, 0, 1) = w;
    for (int site = 0; site < 3; ++site) {
        r.spectra_x1[static_cast<std::size_t>(site)] = single_site_spectrum(r.x1, site);
        r.spectra_x2[static_cast<std::size_t>(site)] = single_site_spectrum(r.x2, site);
        r.max_spectral_difference =
            std::max(r.max_spectral_difference, (r.spectra_x1[static_cast<std::size_t>(site)] -
                                                 r.spectra_x2[static_cast<std::size_t>(site)])
                                                    .cwiseAbs()
                                                    .maxCoeff());
    }
    r.tangle_x1 = three_tangle(r.x1);
    r.tangle_x2 = three_tangle(r.x2);
    r.spectra_equal = r.max_spectral_difference <= 1e-12;
    r.orbits_distinct = std::abs(r.tangle_x1 - r.tangle_x2) > 1e-10;
    r.conclusion = (r.spectra_equal && r.orbits_distinct)
                       ? "equal moment images, distinct orbits: spectra do not decide local unitary "
                         "equivalence for three qubits"
                       : "unexpected: counterexample not reproduced";
    return r;
}

}  // namespace luclass
