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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include "luclass/equivalence.hpp"
#include "luclass/oracle.hpp"
#include "test_util.hpp"

using namespace luclass;
using luclass::testing::kAllCases;

namespace {

int failures = 0;

void report(int k, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", k, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool is_highest_weight(ParticleCase c, int n, const MultiplicityVector& mv) {
    if (c == ParticleCase::Fermion)
        return n == 2 ? mv == MultiplicityVector{{2}, false} : mv == MultiplicityVector{{2, n - 2}, true};
    return mv == MultiplicityVector{{1, n - 1}, true};
}

void criterion1() {
    const auto start = std::chrono::steady_clock::now();
    int rows = 0, bad = 0;
    for (ParticleCase c : kAllCases)
        for (int n = 2; n <= 6; ++n) {
            const auto strata = enumerate_strata(c, n);
            for (std::size_t i = 0; i < strata.size(); ++i) {
                ++rows;
                const OracleReport r = oracle_check(stratum_representative(c, strata[i].d, 1000 + i));
                if (!r.agree) {
                    ++bad;
                    std::printf("  disagreement: %s N=%d stratum #%zu\n", std::string(to_string(c)).c_str(), n, i);
                }
            }
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    os << "oracle agrees on " << rows - bad << "/" << rows << " strata (N <= 6, all cases) in " << secs << " s";
    report(1, bad == 0 && secs < 60.0, os.str());
}

void criterion2() {
    bool ok = true;
    std::ostringstream os;
    os << "generic fiber dims boson";
    for (int n = 2; n <= 6; ++n) {
        const OrbitInvariants inv = invariants_for({std::vector<int>(static_cast<std::size_t>(n), 1), false},
                                                   ParticleCase::Boson);
        const OracleReport r = oracle_check(stratum_representative(ParticleCase::Boson, inv.d, 7));
        ok = ok && inv.fiber_dim == n - 1 && r.degeneracy_numeric == n - 1;
        os << " " << r.degeneracy_numeric;
    }
    os << "; fermion";
    for (int half = 1; half <= 3; ++half) {
        const OrbitInvariants inv = invariants_for({std::vector<int>(static_cast<std::size_t>(half), 2), false},
                                                   ParticleCase::Fermion);
        const OracleReport r = oracle_check(stratum_representative(ParticleCase::Fermion, inv.d, 7));
        ok = ok && inv.fiber_dim == half - 1 && r.degeneracy_numeric == half - 1;
        os << " " << r.degeneracy_numeric;
    }
    report(2, ok, os.str() + " (expected N-1 and n-1)");
}

void criterion3() {
    bool ok = true;
    int zero_rows = 0;
    for (ParticleCase c : kAllCases)
        for (int n = 2; n <= 6; ++n)
            for (const auto& s : enumerate_strata(c, n)) {
                const bool hw = is_highest_weight(c, n, s.d);
                if (s.degeneracy_D == 0) ++zero_rows;
                if ((s.degeneracy_D == 0) != hw) ok = false;
                if (hw) {
                    const OracleReport r = oracle_check(stratum_representative(c, s.d, 3));
                    ok = ok && r.degeneracy_numeric == 0;
                }
            }
    // Odd-N fermion generic stratum: pairs plus the forced zero row.
    std::ostringstream os;
    os << "D = 0 on exactly the " << zero_rows << " highest-weight strata; odd-N fermion generic D";
    for (int n : {3, 5}) {
        std::vector<int> d(static_cast<std::size_t>(n / 2), 2);
        d.push_back(1);
        const OrbitInvariants inv = invariants_for({d, true}, ParticleCase::Fermion);
        const OracleReport r = oracle_check(stratum_representative(ParticleCase::Fermion, inv.d, 5));
        ok = ok && r.agree && inv.degeneracy_D == r.degeneracy_numeric && inv.degeneracy_D == n / 2 - 1;
        os << " N=" << n << ":" << r.degeneracy_numeric;
    }
    report(3, ok && zero_rows == 15, os.str());
}

void criterion4() {
    double worst_gap = 0.0, worst_residual = 0.0;
    for (ParticleCase c : kAllCases)
        for (std::uint64_t trial = 0; trial < 1000; ++trial) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(trial % 5);
            const QuantumState s = random_state(c, n, 40000 + trial);
            const CanonicalForm a = canonicalize(apply_group_action(s, random_local_unitary(c, n, 2 * trial)));
            const CanonicalForm b = canonicalize(apply_group_action(s, random_local_unitary(c, n, 2 * trial + 1)));
            worst_gap = std::max(worst_gap, (a.lambdas - b.lambdas).cwiseAbs().maxCoeff());
            worst_residual = std::max({worst_residual, a.residual, b.residual});
        }
    std::ostringstream os;
    os << "3000 trials, max slice disagreement " << worst_gap << ", max residual " << worst_residual;
    report(4, worst_gap <= 1e-8 && worst_residual <= 1e-9, os.str());
}

void criterion5() {
    int accepted = 0, rejected = 0, errors = 0;
    double worst_witness = 0.0;
    const double tol = kDefaultEquivalenceTol;
    for (ParticleCase c : kAllCases)
        for (std::uint64_t trial = 0; trial < 200; ++trial) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(trial % 5);
            try {
                const QuantumState a = random_state(c, n, 50000 + trial);
                const QuantumState b = apply_group_action(a, random_local_unitary(c, n, 60000 + trial));
                const EquivalenceVerdict same = lu_equivalent(a, b, tol);
                if (same.equivalent && same.witness_residual && *same.witness_residual <= 1e-7) ++accepted;
                if (same.witness_residual) worst_witness = std::max(worst_witness, *same.witness_residual);

                // A small perturbation off the orbit. Two fermions in N = 2 or 3
                // levels form a single orbit, so distinct pairs start at N = 4.
                const Eigen::Index m = c == ParticleCase::Fermion ? 4 + static_cast<Eigen::Index>(trial % 3) : n;
                const QuantumState base = random_state(c, m, 55000 + trial);
                const Matrix mixed = base.coeffs() + 1e-2 * random_state(c, m, 70000 + trial).coeffs();
                const QuantumState other =
                    apply_group_action(validate(mixed, c, 1e-9), random_local_unitary(c, m, 80000 + trial));
                const EquivalenceVerdict diff = lu_equivalent(base, other, tol);
                if (diff.spectral_distance < 10 * tol) {
                    ++errors;  // not a usable distinct pair
                } else if (!diff.equivalent) {
                    ++rejected;
                }
            } catch (const Error& e) {
                ++errors;
                std::printf("  error: %s\n", e.what());
            }
        }
    std::ostringstream os;
    os << accepted << "/600 equivalent pairs accepted (max witness residual " << worst_witness << "), " << rejected
       << "/600 distinct pairs rejected, " << errors << " errors";
    report(5, accepted == 600 && rejected == 600 && errors == 0, os.str());
}

void criterion6() {
    const CounterexampleReport r = counterexample_demo();
    const double diff = r.tangle_x1 - r.tangle_x2;
    std::ostringstream os;
    os << "spectral difference " << r.max_spectral_difference << ", tangle difference " << diff;
    report(6, r.max_spectral_difference <= 1e-12 && std::abs(diff - 8.0 / 9.0) <= 1e-10, os.str());
}

void criterion7() {
    const auto boson = fiber_structure({{2}, false}, ParticleCase::Boson);
    const auto fermion = fiber_structure({{2, 2}, false}, ParticleCase::Fermion);
    const int so2 = boson[1].dim;
    const int usp2 = fermion[1].dim;
    const OracleReport s2 = oracle_check(validate(Matrix::Identity(2, 2), ParticleCase::Boson, 1e-9));
    const OracleReport f4 =
        oracle_check(stratum_representative(ParticleCase::Fermion, {{2, 2}, false}, 9));
    // s2 has a trivial torus, so its whole degeneracy is SU2/SO2. The N=4
    // fermion has a one-dimensional torus and two SU2/USp2 factors.
    const bool ok = boson[1].kind == FiberKind::SymSO && fermion[1].kind == FiberKind::SymUSp && so2 == 2 &&
                    usp2 == 0 && s2.degeneracy_numeric == so2 && f4.degeneracy_numeric == 1 + 2 * usp2;
    std::ostringstream os;
    os << "dim SU2/SO2 = " << so2 << " (oracle " << s2.degeneracy_numeric << "), dim SU2/USp2 = " << usp2
       << " (oracle D " << f4.degeneracy_numeric << " = torus 1)";
    report(7, ok, os.str());
}

void criterion8() {
    const double t = 1e-5;
    double worst = 0.0;
    for (ParticleCase c : kAllCases)
        for (std::uint64_t trial = 0; trial < 100; ++trial) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(trial % 5);
            const QuantumState s = random_state(c, n, 90000 + trial);
            const AlgebraElement xi = random_algebra_element(c, n, 95000 + trial);
            const Matrix plus = apply_group_action(s, exp_local(c, xi, t)).coeffs();
            const Matrix minus = apply_group_action(s, exp_local(c, xi, -t)).coeffs();
            worst = std::max(worst, ((plus - minus) / (2.0 * t) - apply_algebra_action(s, xi)).norm());
        }
    std::ostringstream os;
    os << "300 pairs, max central-difference error " << worst;
    report(8, worst <= 1e-6, os.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%s: %d of 8 criteria failed\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}
