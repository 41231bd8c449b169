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

#include "luclass/invariants.hpp"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace luclass;
using namespace luclass::testing;

namespace {

RealVector vec(std::initializer_list<double> xs) {
    RealVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

// Subgroup dimensions counted directly: dim SO_m = m(m-1)/2, dim USp_m = m(m+1)/2.
int so_quotient(int m) { return (m * m - 1) - m * (m - 1) / 2; }
int usp_quotient(int m) { return (m * m - 1) - (m / 2) * (m + 1); }

}  // namespace

TEST(multiplicity_vector, examples) {
    EXPECT_EQ(multiplicity_vector(vec({0.5, 0.3, 0.2}), ParticleCase::Boson, 1e-8),
              (MultiplicityVector{{1, 1, 1}, false}));
    EXPECT_EQ(multiplicity_vector(vec({0.5, 0.5, 0.0}), ParticleCase::Boson, 1e-8),
              (MultiplicityVector{{2, 1}, true}));
    EXPECT_EQ(multiplicity_vector(vec({0.3, 0.3, 0.2, 0.2, 0.0}), ParticleCase::Fermion, 1e-8),
              (MultiplicityVector{{2, 2, 1}, true}));
    EXPECT_EQ(multiplicity_vector(vec({0.5, 0.5, 0.0}), ParticleCase::Fermion, 1e-8),
              (MultiplicityVector{{2, 1}, true}));
    EXPECT_EQ(multiplicity_vector(vec({0.5, 0.5, 0.0, 0.0, 0.0}), ParticleCase::Fermion, 1e-8),
              (MultiplicityVector{{2, 3}, true}));
    EXPECT_EQ(multiplicity_vector(vec({0.25, 0.25, 0.25, 0.25}), ParticleCase::Distinguishable, 1e-8),
              (MultiplicityVector{{4}, false}));
}

TEST(multiplicity_vector, clustering_tolerance) {
    EXPECT_EQ(multiplicity_vector(vec({0.5 + 1e-12, 0.5 - 1e-12}), ParticleCase::Boson, 1e-8).d,
              std::vector<int>{2});
    EXPECT_EQ(multiplicity_vector(vec({0.5 + 1e-6, 0.5 - 1e-6}), ParticleCase::Boson, 1e-8).d,
              (std::vector<int>{1, 1}));
}

TEST(multiplicity_vector, boundary_distance) {
    double boundary = 0.0;
    multiplicity_vector(vec({0.5, 0.3, 0.2}), ParticleCase::Boson, 1e-8, &boundary);
    EXPECT_NEAR(boundary, 0.1, 1e-15);
    multiplicity_vector(vec({1.0, 0.0}), ParticleCase::Boson, 1e-8, &boundary);
    EXPECT_TRUE(std::isinf(boundary));
    multiplicity_vector(vec({0.5, 0.5}), ParticleCase::Boson, 1e-8, &boundary);
    EXPECT_TRUE(std::isinf(boundary));
}

TEST(multiplicity_vector, error_paths) {
    EXPECT_THROW(multiplicity_vector(vec({0.2, 0.8}), ParticleCase::Boson, 1e-8), Error);
    try {
        multiplicity_vector(vec({0.2, 0.8}), ParticleCase::Boson, 1e-8);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsortedInput);
    }
    EXPECT_THROW(multiplicity_vector(vec({0.4, 0.3, 0.2, 0.1}), ParticleCase::Fermion, 1e-8), Error);
}

TEST(flag_dimension, examples) {
    EXPECT_EQ(flag_dimension({{4}, false}, ParticleCase::Boson), 0);
    EXPECT_EQ(flag_dimension({{1, 1}, false}, ParticleCase::Boson), 2);
    EXPECT_EQ(flag_dimension({{1, 1}, false}, ParticleCase::Distinguishable), 4);
    EXPECT_EQ(flag_dimension({{2, 2}, true}, ParticleCase::Fermion), 8);
}

TEST(flag_dimension, invalid_strata) {
    for (const MultiplicityVector& bad : {MultiplicityVector{{}, false}, MultiplicityVector{{2, 0}, false},
                                          MultiplicityVector{{3}, true}}) {
        try {
            flag_dimension(bad, ParticleCase::Boson);
            ADD_FAILURE() << "accepted an invalid stratum";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidStratum);
        }
    }
    EXPECT_THROW(flag_dimension({{3, 2}, false}, ParticleCase::Fermion), Error);
    EXPECT_THROW(flag_dimension({{2, 1}, false}, ParticleCase::Fermion), Error);
}

TEST(fiber_structure, symmetric_space_dimensions) {
    for (int m = 1; m <= 8; ++m) {
        EXPECT_EQ(symmetric_so_dim(m), so_quotient(m)) << m;
        if (m % 2 == 0) {
            EXPECT_EQ(symmetric_usp_dim(m), usp_quotient(m)) << m;
        }
    }
    EXPECT_EQ(symmetric_so_dim(2), 2);
    EXPECT_EQ(symmetric_usp_dim(2), 0);
    EXPECT_EQ(symmetric_usp_dim(4), 5);
    EXPECT_THROW(make_factor(FiberKind::SymUSp, 3), Error);
}

TEST(fiber_structure, examples) {
    const auto s2 = fiber_structure({{2}, false}, ParticleCase::Boson);
    ASSERT_EQ(s2.size(), 2u);
    EXPECT_EQ(s2[0], (FiberFactor{FiberKind::Torus, 0, 0}));
    EXPECT_EQ(s2[1], (FiberFactor{FiberKind::SymSO, 2, 2}));

    const auto f6 = fiber_structure({{2, 2, 2}, false}, ParticleCase::Fermion);
    ASSERT_EQ(f6.size(), 4u);
    EXPECT_EQ(f6[0].dim, 2);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(f6[i], (FiberFactor{FiberKind::SymUSp, 2, 0}));

    const auto bell = fiber_structure({{2}, false}, ParticleCase::Distinguishable);
    EXPECT_EQ(bell[1], (FiberFactor{FiberKind::GroupSU, 2, 3}));
}

TEST(orbit_invariants, highest_weight_boson) {
    for (Eigen::Index n = 2; n <= 6; ++n) {
        Matrix c = Matrix::Zero(n, n);
        c(0, 0) = 1.0;
        const OrbitInvariants inv = orbit_invariants(canonicalize(validate(c, ParticleCase::Boson, 1e-9)));
        EXPECT_EQ(inv.d, (MultiplicityVector{{1, static_cast<int>(n) - 1}, true}));
        EXPECT_EQ(inv.fiber_dim, 0);
        EXPECT_EQ(inv.degeneracy_D, 0);
        EXPECT_EQ(inv.orbit_dim, 2 * (static_cast<int>(n) - 1));  // CP^{N-1}
    }
}

TEST(orbit_invariants, fermion_grassmannian) {
    const OrbitInvariants inv =
        orbit_invariants(canonicalize(validate(symplectic_unit(4, 1), ParticleCase::Fermion, 1e-9)));
    EXPECT_EQ(inv.d, (MultiplicityVector{{2, 2}, true}));
    EXPECT_EQ(inv.fiber_dim, 0);
    EXPECT_EQ(inv.orbit_dim, 8);
    EXPECT_EQ(inv.degeneracy_D, 0);
}

TEST(orbit_invariants, boson_generic) {
    for (Eigen::Index n = 2; n <= 6; ++n) {
        const OrbitInvariants inv = orbit_invariants(canonicalize(random_state(ParticleCase::Boson, n, 3)));
        EXPECT_EQ(inv.d.d, std::vector<int>(static_cast<std::size_t>(n), 1));
        EXPECT_FALSE(inv.d.degenerate);
        EXPECT_EQ(inv.degeneracy_D, n - 1);
        EXPECT_EQ(inv.fiber_factors[0], (FiberFactor{FiberKind::Torus, static_cast<int>(n) - 1,
                                                     static_cast<int>(n) - 1}));
    }
}

TEST(enumerate_strata, small_examples) {
    const auto boson = enumerate_strata(ParticleCase::Boson, 2);
    ASSERT_EQ(boson.size(), 3u);
    EXPECT_EQ(boson[0].d, (MultiplicityVector{{1, 1}, false}));
    EXPECT_EQ(boson[0].degeneracy_D, 1);
    EXPECT_EQ(boson[1].d, (MultiplicityVector{{2}, false}));
    EXPECT_EQ(boson[1].degeneracy_D, 2);
    EXPECT_EQ(boson[2].d, (MultiplicityVector{{1, 1}, true}));
    EXPECT_EQ(boson[2].degeneracy_D, 0);

    const auto fermion = enumerate_strata(ParticleCase::Fermion, 2);
    ASSERT_EQ(fermion.size(), 1u);
    EXPECT_EQ(fermion[0].d, (MultiplicityVector{{2}, false}));
    EXPECT_EQ(fermion[0].orbit_dim, 0);

    const auto dist = enumerate_strata(ParticleCase::Distinguishable, 2);
    ASSERT_EQ(dist.size(), 3u);
    std::set<std::pair<std::vector<int>, int>> seen;
    for (const auto& s : dist) seen.insert({s.d.d, s.degeneracy_D});
    EXPECT_TRUE(seen.count({{2}, 3}));
    EXPECT_TRUE(seen.count({{1, 1}, 1}));
    EXPECT_TRUE(seen.count({{1, 1}, 0}));
}

TEST(enumerate_strata, structural_properties) {
    for (ParticleCase c : kAllCases)
        for (int n = 2; n <= 7; ++n) {
            const auto strata = enumerate_strata(c, n);
            ASSERT_FALSE(strata.empty());
            const int manifold = c == ParticleCase::Boson     ? n * (n + 1) - 2
                                 : c == ParticleCase::Fermion ? n * (n - 1) - 2
                                                              : 2 * n * n - 2;
            int highest_weight = 0;
            for (const auto& s : strata) {
                EXPECT_LE(s.degeneracy_D, s.orbit_dim);
                EXPECT_LE(s.orbit_dim, manifold);
                EXPECT_EQ(std::accumulate(s.d.d.begin(), s.d.d.end(), 0), n);
                if (s.degeneracy_D == 0) ++highest_weight;
            }
            for (std::size_t i = 1; i < strata.size(); ++i)
                EXPECT_GE(strata[i - 1].orbit_dim, strata[i].orbit_dim);
            EXPECT_EQ(highest_weight, 1) << to_string(c) << " N=" << n;
        }
}

TEST(stratum_representative, lands_in_its_stratum) {
    for (ParticleCase c : kAllCases)
        for (int n = 2; n <= 6; ++n)
            for (const auto& s : enumerate_strata(c, n)) {
                const QuantumState rep = stratum_representative(c, s.d, 1);
                const CanonicalForm cf = canonicalize(rep);
                EXPECT_EQ(orbit_invariants(cf).d, s.d);
                // Distinct Schmidt values (zero included) stay well apart.
                std::vector<double> lam(cf.lambdas.data(), cf.lambdas.data() + cf.lambdas.size());
                lam.push_back(0.0);
                for (std::size_t i = 1; i < lam.size(); ++i) {
                    const double gap = lam[i - 1] - lam[i];
                    EXPECT_TRUE(gap < 1e-10 || gap >= 0.05) << gap;
                }
            }
}
