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

// Command implementations behind tools/luclass. Each command writes to the
// given stream and returns the process exit code:
//
//   0  success (compare: equivalent; oracle/strata --verify: all agree)
//   1  compare: not equivalent; oracle/strata --verify: disagreement
//   2  parse or usage error
//   3  validation error
//   4  convergence failure

#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "luclass/io.hpp"

namespace luclass::cli {

enum class Command { Classify, Compare, Strata, Oracle, Random, Demo };

enum ExitCode : int {
    kOk = 0,
    kNegative = 1,
    kParseError = 2,
    kValidationError = 3,
    kConvergenceFailure = 4,
};

struct RunConfig {
    Command command = Command::Classify;
    std::vector<std::string> inputs;
    ParticleCase particle_case = ParticleCase::Boson;
    int n = 2;
    std::uint64_t seed = 0;
    double tol = kDefaultEquivalenceTol;
    double cluster_tol = kDefaultClusterTol;
    double rank_tol = kDefaultRankTol;
    bool json = false;
    bool verify = false;
    std::optional<std::string> out;
};

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError: return kParseError;
        case ErrorKind::ConvergenceFailure: return kConvergenceFailure;
        default: return kValidationError;
    }
}

inline void check_config(const RunConfig& cfg) {
    auto positive = [](double x, const char* name) {
        luclass::detail::require(x > 0.0 && std::isfinite(x), ErrorKind::ParseError,
                                 std::string(name) + " must be positive");
    };
    positive(cfg.tol, "--tol");
    positive(cfg.cluster_tol, "--cluster-tol");
    positive(cfg.rank_tol, "--rank-tol");
}

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(15) << io::round15(x);
    return os.str();
}

inline std::string fmt(const RealVector& v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v(i));
    return s + ")";
}

inline std::string fmt(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline std::string fiber_text(const std::vector<FiberFactor>& factors) {
    std::string s;
    for (const auto& f : factors) {
        if (!s.empty()) s += " x ";
        if (f.kind == FiberKind::Torus)
            s += "T^" + std::to_string(f.m);
        else
            s += std::string(to_string(f.kind)) + "(" + std::to_string(f.m) + ")";
    }
    return s;
}

inline void emit(const RunConfig& cfg, std::ostream& os, const std::string& text) {
    if (cfg.out) {
        std::ofstream f(*cfg.out);
        luclass::detail::require(static_cast<bool>(f), ErrorKind::ParseError, "cannot write '" + *cfg.out + "'");
        f << text;
    } else {
        os << text;
    }
}

inline std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline int cmd_classify(const RunConfig& cfg, std::ostream& os) {
    const QuantumState s = io::load_state(cfg.inputs.at(0), cfg.tol);
    const MomentImage m = reduced_matrix(s);
    const CanonicalForm cf = canonicalize(s);
    const OrbitInvariants inv = orbit_invariants(cf, cfg.cluster_tol);
    if (cfg.json) {
        io::json j{{"case", std::string(to_string(s.particle_case()))},
                   {"n", s.n_levels()},
                   {"moment", io::moment_json(m)},
                   {"canonical", io::canonical_json(cf)},
                   {"stratum", io::stratum_json(inv)},
                   {"boundary_distance", io::number(inv.boundary_distance)}};
        detail::emit(cfg, os, detail::dump(j));
        return kOk;
    }
    std::ostringstream t;
    t << "case            " << to_string(s.particle_case()) << ", N = " << s.n_levels() << "\n"
      << "q spectrum      " << detail::fmt(m.q_spectrum) << "\n"
      << "probabilities   " << detail::fmt(m.probabilities()) << "\n"
      << "slice lambdas   " << detail::fmt(cf.lambdas) << "\n"
      << "residual        " << detail::fmt(cf.residual) << "\n"
      << "global phase    " << detail::fmt(cf.global_phase.real()) << " + " << detail::fmt(cf.global_phase.imag())
      << "i\n"
      << "d               " << detail::fmt(inv.d.d) << (inv.d.degenerate ? " degenerate" : " nondegenerate") << "\n"
      << "flag dim        " << inv.flag_dim_real << "\n"
      << "fiber           " << detail::fiber_text(inv.fiber_factors) << " (dim " << inv.fiber_dim << ")\n"
      << "orbit dim       " << inv.orbit_dim << "\n"
      << "degeneracy D    " << inv.degeneracy_D << "\n"
      << "boundary dist   " << detail::fmt(inv.boundary_distance) << "\n";
    detail::emit(cfg, os, t.str());
    return kOk;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& os) {
    const QuantumState a = io::load_state(cfg.inputs.at(0), cfg.tol);
    const QuantumState b = io::load_state(cfg.inputs.at(1), cfg.tol);
    const EquivalenceVerdict v = lu_equivalent(a, b, cfg.tol);
    if (cfg.json) {
        detail::emit(cfg, os, detail::dump(io::verdict_json(v)));
    } else {
        std::ostringstream t;
        t << "equivalent         " << (v.equivalent ? "yes" : "no") << "\n"
          << "spectral distance  " << detail::fmt(v.spectral_distance) << "\n";
        if (v.witness_residual) t << "witness residual   " << detail::fmt(*v.witness_residual) << "\n";
        for (const auto& w : v.warnings) t << "warning            " << w << "\n";
        detail::emit(cfg, os, t.str());
    }
    return v.equivalent ? kOk : kNegative;
}

inline int cmd_strata(const RunConfig& cfg, std::ostream& os) {
    const auto strata = enumerate_strata(cfg.particle_case, cfg.n);
    std::vector<std::optional<OracleReport>> checks(strata.size());
    bool all_agree = true;
    if (cfg.verify) {
        for (std::size_t i = 0; i < strata.size(); ++i) {
            const QuantumState rep =
                stratum_representative(cfg.particle_case, strata[i].d, cfg.seed + static_cast<std::uint64_t>(i));
            checks[i] = oracle_check(rep, cfg.rank_tol, cfg.cluster_tol);
            all_agree = all_agree && checks[i]->agree;
        }
    }
    if (cfg.json) {
        io::json rows = io::json::array();
        for (std::size_t i = 0; i < strata.size(); ++i) {
            io::json row = io::stratum_json(strata[i]);
            if (checks[i]) row["oracle"] = io::oracle_json(*checks[i]);
            rows.push_back(std::move(row));
        }
        detail::emit(cfg, os,
                     detail::dump(io::json{{"case", std::string(to_string(cfg.particle_case))},
                                           {"n", cfg.n},
                                           {"strata", rows}}));
    } else {
        std::ostringstream t;
        t << std::left << std::setw(16) << "d" << std::setw(8) << "degen" << std::setw(6) << "flag" << std::setw(40)
          << "fiber" << std::setw(7) << "fiber" << std::setw(7) << "orbit" << std::setw(4) << "D";
        if (cfg.verify) t << "  oracle";
        t << "\n";
        for (std::size_t i = 0; i < strata.size(); ++i) {
            const auto& s = strata[i];
            t << std::left << std::setw(16) << detail::fmt(s.d.d) << std::setw(8) << (s.d.degenerate ? "yes" : "no")
              << std::setw(6) << s.flag_dim_real << std::setw(40) << detail::fiber_text(s.fiber_factors)
              << std::setw(7) << s.fiber_dim << std::setw(7) << s.orbit_dim << std::setw(4) << s.degeneracy_D;
            if (checks[i])
                t << "  " << (checks[i]->agree ? "agree" : "DISAGREE") << " (orbit " << checks[i]->orbit_dim_numeric
                  << ", D " << checks[i]->degeneracy_numeric << ")";
            t << "\n";
        }
        detail::emit(cfg, os, t.str());
    }
    return all_agree ? kOk : kNegative;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& os) {
    const QuantumState s = io::load_state(cfg.inputs.at(0), cfg.tol);
    const OracleReport r = oracle_check(s, cfg.rank_tol, cfg.cluster_tol);
    if (cfg.json) {
        detail::emit(cfg, os, detail::dump(io::oracle_json(r)));
    } else {
        std::ostringstream t;
        t << "orbit dim        numeric " << r.orbit_dim_numeric << ", formula " << r.formula_orbit_dim << "\n"
          << "symplectic rank  " << r.symplectic_rank_numeric << "\n"
          << "degeneracy D     numeric " << r.degeneracy_numeric << ", formula " << r.formula_degeneracy << "\n"
          << "rank tolerance   " << detail::fmt(r.rank_tolerance_used) << "\n"
          << "agree            " << (r.agree ? "yes" : "no") << "\n";
        for (const auto& d : r.diagnostics) t << "note             " << d << "\n";
        detail::emit(cfg, os, t.str());
    }
    return r.agree ? kOk : kNegative;
}

inline int cmd_random(const RunConfig& cfg, std::ostream& os) {
    const QuantumState s = random_state(cfg.particle_case, cfg.n, cfg.seed);
    detail::emit(cfg, os, detail::dump(io::state_json(s)));
    return kOk;
}

inline int cmd_demo_counterexample(const RunConfig& cfg, std::ostream& os) {
    const CounterexampleReport r = counterexample_demo();
    if (cfg.json) {
        detail::emit(cfg, os, detail::dump(io::counterexample_json(r)));
        return kOk;
    }
    std::ostringstream t;
    t << "x1 = sqrt(2/3)|000> + sqrt(1/3)|111>\n"
      << "x2 = (|100> + |010> + |001>)/sqrt(3)\n\n"
      << std::left << std::setw(8) << "site" << std::setw(42) << "spectrum x1" << "spectrum x2\n";
    for (std::size_t site = 0; site < 3; ++site) {
        const RealVector a = r.spectra_x1[site];
        const RealVector b = r.spectra_x2[site];
        t << std::left << std::setw(8) << site << std::setw(42) << detail::fmt(a) << detail::fmt(b) << "\n";
    }
    t << "\nmax spectral difference  " << detail::fmt(r.max_spectral_difference) << "\n"
      << "three-tangle x1          " << detail::fmt(r.tangle_x1) << "\n"
      << "three-tangle x2          " << detail::fmt(r.tangle_x2) << "\n\n"
      << r.conclusion << "\n";
    detail::emit(cfg, os, t.str());
    return kOk;
}

/// Runs one command, translating library errors into exit codes.
inline int run(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    try {
        check_config(cfg);
        switch (cfg.command) {
            case Command::Classify: return cmd_classify(cfg, os);
            case Command::Compare: return cmd_compare(cfg, os);
            case Command::Strata: return cmd_strata(cfg, os);
            case Command::Oracle: return cmd_oracle(cfg, os);
            case Command::Random: return cmd_random(cfg, os);
            case Command::Demo: return cmd_demo_counterexample(cfg, os);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    return kParseError;
}

}  // namespace luclass::cli
