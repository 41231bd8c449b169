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

// Orbit types. A point on the slice determines its multiplicity vector d
// (block sizes of equal one-particle probabilities) and whether the last
// block is zero. From (d, degenerate) follow
//
//   coadjoint orbit  F(d_1..d_k)          real dim  N^2 - sum d_i^2  (x2 for K x K)
//   mu-fiber         torus x symmetric spaces, see fiber_structure()
//   orbit dim        flag dim + fiber dim
//   degeneracy D     fiber dim  (kernel of the Fubini-Study form on the orbit)
//
// Finite covering groups are ignored throughout; only dimensions and factor
// types are reported.

#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "luclass/canonical.hpp"

namespace luclass {

inline constexpr double kDefaultClusterTol = 1e-8;

struct MultiplicityVector {
    std::vector<int> d;
    bool degenerate = false;

    friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

enum class FiberKind { Torus, SymSO, SymUSp, GroupSU };

inline std::string_view to_string(FiberKind k) {
    switch (k) {
        case FiberKind::Torus: return "torus";
        case FiberKind::SymSO: return "SU/SO";
        case FiberKind::SymUSp: return "SU/USp";
        case FiberKind::GroupSU: return "SU";
    }
    return "?";
}

struct FiberFactor {
    FiberKind kind;
    int m = 0;  // torus dimension, or the SU_m index
    int dim = 0;

    friend bool operator==(const FiberFactor&, const FiberFactor&) = default;
};

inline int symmetric_so_dim(int m) { return (m - 1) * (m + 2) / 2; }   // dim SU_m - dim SO_m
inline int symmetric_usp_dim(int m) { return (m - 2) * (m + 1) / 2; }  // dim SU_m - dim USp_m, m even
inline int special_unitary_dim(int m) { return m * m - 1; }

inline FiberFactor make_factor(FiberKind kind, int m) {
    switch (kind) {
        case FiberKind::Torus: return {kind, m, m};
        case FiberKind::SymSO: return {kind, m, symmetric_so_dim(m)};
        case FiberKind::SymUSp:
            detail::require(m % 2 == 0, ErrorKind::InvalidStratum, "SU_m/USp_m needs even m");
            return {kind, m, symmetric_usp_dim(m)};
        case FiberKind::GroupSU: return {kind, m, special_unitary_dim(m)};
    }
    return {kind, m, 0};
}

struct OrbitInvariants {
    MultiplicityVector d;
    int flag_dim_real = 0;
    std::vector<FiberFactor> fiber_factors;
    int fiber_dim = 0;
    int orbit_dim = 0;
    int degeneracy_D = 0;
    /// Smallest gap between adjacent probability blocks (or between the last
    /// nonzero block and 0). +inf when no coarser stratum exists.
    double boundary_distance = std::numeric_limits<double>::infinity();
};

namespace detail {

struct Clustering {
    std::vector<int> sizes;
    bool has_zero_block = false;
    double boundary = std::numeric_limits<double>::infinity();
};

// Groups a descending nonnegative sequence into runs with successive gaps
// <= tol * max; values <= tol * max form the trailing zero block.
inline Clustering cluster_descending(const std::vector<double>& values, double tol) {
    Clustering out;
    if (values.empty()) return out;
    const double top = values.front();
    const double gap = tol * top;
    std::size_t nonzero = 0;
    while (nonzero < values.size() && values[nonzero] > gap) ++nonzero;
    for (std::size_t i = 0; i < nonzero;) {
        std::size_t j = i + 1;
        while (j < nonzero && values[j - 1] - values[j] <= gap) ++j;
        out.sizes.push_back(static_cast<int>(j - i));
        if (j < nonzero) out.boundary = std::min(out.boundary, values[j - 1] - values[j]);
        i = j;
    }
    // Collapsing the last nonzero block to zero is only another stratum when
    // some other nonzero block survives.
    if (out.sizes.size() >= 2) out.boundary = std::min(out.boundary, values[nonzero - 1]);
    if (nonzero < values.size()) {
        out.sizes.push_back(static_cast<int>(values.size() - nonzero));
        out.has_zero_block = true;
    }
    return out;
}

}  // namespace detail

/// Multiplicity vector from a probability vector p (length N, descending,
/// nonnegative). Fermion spectra must come in equal pairs (plus a trailing
/// zero for odd N); their blocks are twice the pair multiplicities, and the
/// forced zero of odd N joins the final zero block.
inline MultiplicityVector multiplicity_vector(const RealVector& p, ParticleCase c, double cluster_tol,
                                              double* boundary_distance = nullptr) {
    const auto n = p.size();
    detail::require(n >= 1, ErrorKind::InvalidInput, "empty probability vector");
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        detail::require(p(i) >= p(i + 1), ErrorKind::UnsortedInput, "probabilities must be sorted descending");
    const double top = p(0);
    detail::require(top > 0.0, ErrorKind::ZeroState, "all probabilities are zero");
    detail::require(p(n - 1) >= -cluster_tol * top, ErrorKind::InvalidInput, "negative probability");

    std::vector<double> values;
    if (c == ParticleCase::Fermion) {
        for (Eigen::Index j = 0; j + 1 < n; j += 2) {
            detail::require(std::abs(p(j) - p(j + 1)) <= cluster_tol * top, ErrorKind::InvalidInput,
                            "fermion spectrum is not paired");
            values.push_back(std::max(0.0, (p(j) + p(j + 1)) / 2.0));
        }
        if (n % 2 == 1)
            detail::require(std::abs(p(n - 1)) <= cluster_tol * top, ErrorKind::InvalidInput,
                            "odd fermion spectrum needs a trailing zero");
    } else {
        for (Eigen::Index j = 0; j < n; ++j) values.push_back(std::max(0.0, p(j)));
    }

    const detail::Clustering cl = detail::cluster_descending(values, cluster_tol);
    MultiplicityVector mv;
    mv.degenerate = cl.has_zero_block;
    mv.d = cl.sizes;
    if (c == ParticleCase::Fermion) {
        for (int& b : mv.d) b *= 2;
        if (n % 2 == 1) {
            if (mv.degenerate) {
                mv.d.back() += 1;
            } else {
                mv.d.push_back(1);
                mv.degenerate = true;
            }
        }
    }
    if (boundary_distance) *boundary_distance = cl.boundary;
    return mv;
}

namespace detail {

inline void check_multiplicity(const MultiplicityVector& mv, ParticleCase c) {
    require(!mv.d.empty(), ErrorKind::InvalidStratum, "empty multiplicity vector");
    for (int b : mv.d) require(b > 0, ErrorKind::InvalidStratum, "block sizes must be positive");
    require(!(mv.degenerate && mv.d.size() == 1), ErrorKind::InvalidStratum,
            "a single zero block is the zero state");
    if (c == ParticleCase::Fermion) {
        for (std::size_t i = 0; i + 1 < mv.d.size(); ++i)
            require(mv.d[i] % 2 == 0, ErrorKind::InvalidStratum, "fermion blocks must be even");
        if (mv.d.back() % 2 == 1)
            require(mv.degenerate, ErrorKind::InvalidStratum, "odd fermion block must be the zero block");
    }
}

}  // namespace detail

inline int flag_dimension(const MultiplicityVector& mv, ParticleCase c) {
    detail::check_multiplicity(mv, c);
    const int n = std::accumulate(mv.d.begin(), mv.d.end(), 0);
    int dim = n * n;
    for (int b : mv.d) dim -= b * b;
    return c == ParticleCase::Distinguishable ? 2 * dim : dim;
}

/// mu-fiber of the stratum: a torus times one symmetric space (or group
/// manifold) per nonzero block. A zero block is absorbed into the isotropy
/// and contributes nothing.
inline std::vector<FiberFactor> fiber_structure(const MultiplicityVector& mv, ParticleCase c) {
    detail::check_multiplicity(mv, c);
    const int k = static_cast<int>(mv.d.size());
    const int nonzero_blocks = mv.degenerate ? k - 1 : k;
    const FiberKind block_kind = c == ParticleCase::Boson     ? FiberKind::SymSO
                                 : c == ParticleCase::Fermion ? FiberKind::SymUSp
                                                              : FiberKind::GroupSU;
    std::vector<FiberFactor> out;
    out.push_back(make_factor(FiberKind::Torus, nonzero_blocks - 1));
    for (int i = 0; i < nonzero_blocks; ++i) out.push_back(make_factor(block_kind, mv.d[static_cast<std::size_t>(i)]));
    return out;
}

inline OrbitInvariants invariants_for(const MultiplicityVector& mv, ParticleCase c) {
    OrbitInvariants inv;
    inv.d = mv;
    inv.flag_dim_real = flag_dimension(mv, c);
    inv.fiber_factors = fiber_structure(mv, c);
    for (const auto& f : inv.fiber_factors) inv.fiber_dim += f.dim;
    inv.orbit_dim = inv.flag_dim_real + inv.fiber_dim;
    inv.degeneracy_D = inv.fiber_dim;
    return inv;
}

inline OrbitInvariants orbit_invariants(const CanonicalForm& cf, double cluster_tol = kDefaultClusterTol) {
    double boundary = std::numeric_limits<double>::infinity();
    const MultiplicityVector mv = multiplicity_vector(cf.probabilities(), cf.particle_case, cluster_tol, &boundary);
    OrbitInvariants inv = invariants_for(mv, cf.particle_case);
    inv.boundary_distance = boundary;
    return inv;
}

namespace detail {

// All compositions of `total` whose parts are multiples of `step`.
inline void compositions(int total, int step, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (total == 0) {
        out.push_back(prefix);
        return;
    }
    for (int part = step; part <= total; part += step) {
        prefix.push_back(part);
        compositions(total - part, step, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/// Every stratum (d, degenerate) for the given case and N, sorted by orbit
/// dimension descending (ties: nondegenerate first, then d lexicographically
/// descending).
inline std::vector<OrbitInvariants> enumerate_strata(ParticleCase c, int n) {
    detail::require(n >= 2, ErrorKind::InvalidDimension, "one-particle dimension must be at least 2");
    std::vector<MultiplicityVector> candidates;
    std::vector<int> prefix;
    if (c == ParticleCase::Fermion) {
        if (n % 2 == 0) {
            std::vector<std::vector<int>> comps;
            detail::compositions(n, 2, prefix, comps);
            for (auto& d : comps) {
                candidates.push_back({d, false});
                if (d.size() >= 2) candidates.push_back({d, true});
            }
        } else {
            // Even nonzero blocks followed by an odd zero block.
            for (int zero = 1; zero <= n - 2; zero += 2) {
                std::vector<std::vector<int>> comps;
                detail::compositions(n - zero, 2, prefix, comps);
                for (auto& d : comps) {
                    d.push_back(zero);
                    candidates.push_back({d, true});
                }
            }
        }
    } else {
        std::vector<std::vector<int>> comps;
        detail::compositions(n, 1, prefix, comps);
        for (auto& d : comps) {
            candidates.push_back({d, false});
            if (d.size() >= 2) candidates.push_back({d, true});
        }
    }
    std::vector<OrbitInvariants> out;
    out.reserve(candidates.size());
    for (const auto& mv : candidates) out.push_back(invariants_for(mv, c));
    std::stable_sort(out.begin(), out.end(), [](const OrbitInvariants& a, const OrbitInvariants& b) {
        if (a.orbit_dim != b.orbit_dim) return a.orbit_dim > b.orbit_dim;
        if (a.d.degenerate != b.d.degenerate) return !a.d.degenerate;
        return a.d.d > b.d.d;
    });
    return out;
}

/// A state in the given stratum: slice point with equally spaced Schmidt
/// coefficients lambda_j proportional to (b - j) over the b nonzero blocks,
/// moved off the slice by a random local unitary. Adjacent blocks differ by
/// at least 0.05 in lambda for N <= 6.
inline QuantumState stratum_representative(ParticleCase c, const MultiplicityVector& mv, std::uint64_t seed) {
    detail::check_multiplicity(mv, c);
    const int n = std::accumulate(mv.d.begin(), mv.d.end(), 0);
    const int nonzero_blocks = static_cast<int>(mv.d.size()) - (mv.degenerate ? 1 : 0);
    Matrix slice = Matrix::Zero(n, n);
    int offset = 0;
    for (int b = 0; b < nonzero_blocks; ++b) {
        const double lam = static_cast<double>(nonzero_blocks - b);
        const int size = mv.d[static_cast<std::size_t>(b)];
        if (c == ParticleCase::Fermion) {
            for (int j = 0; j < size; j += 2) {
                slice(offset + j, offset + j + 1) = lam;
                slice(offset + j + 1, offset + j) = -lam;
            }
        } else {
            for (int j = 0; j < size; ++j) slice(offset + j, offset + j) = lam;
        }
        offset += size;
    }
    const QuantumState base = validate(slice, c, 1e-12);
    return apply_group_action(base, random_local_unitary(c, n, seed));
}

}  // namespace luclass
