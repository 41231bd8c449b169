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

// JSON documents. Every floating point value is rounded to 15 significant
// digits before serialization, so writing, reading and writing again gives
// byte-identical output.
//
//   state:     {"case": "boson"|"fermion"|"dist", "n": N, "matrix": [[[re,im],...],...]}
//   moment:    {"q": [...], "p": [...], "case": ...}
//   canonical: {"lambdas": [...], "residual": r, "global_phase": [re,im],
//               "witness_u": matrix, "witness_v": matrix|null}
//   stratum:   {"d": [...], "degenerate": b, "flag_dim": i, "fiber": [{"kind", "m", "dim"}],
//               "fiber_dim": i, "orbit_dim": i, "degeneracy": i}
//   verdict:   {"equivalent": b, "spectral_distance": r, "witness": {...}|null,
//               "witness_residual": r|null, "warnings": [...]}

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "luclass/equivalence.hpp"
#include "luclass/oracle.hpp"

namespace luclass::io {

using json = nlohmann::json;

inline double round15(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

inline json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round15(x);
}

inline json vector_json(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
    return out;
}

inline json complex_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

inline json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ParticleCase parse_case(const std::string& s) {
    if (s == "boson") return ParticleCase::Boson;
    if (s == "fermion") return ParticleCase::Fermion;
    if (s == "dist" || s == "distinguishable") return ParticleCase::Distinguishable;
    throw Error(ErrorKind::ParseError, "unknown case '" + s + "'");
}

namespace detail {

inline double finite_number(const json& j, const std::string& where) {
    luclass::detail::require(j.is_number(), ErrorKind::ParseError, where + " is not a number");
    const double x = j.get<double>();
    luclass::detail::require(std::isfinite(x), ErrorKind::ParseError, where + " is not finite");
    return x;
}

}  // namespace detail

/// Parses [[[re,im],...],...]; rows must all have the same length.
inline Matrix parse_matrix(const json& j) {
    luclass::detail::require(j.is_array() && !j.empty(), ErrorKind::ParseError, "matrix must be a nonempty array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    luclass::detail::require(j[0].is_array(), ErrorKind::ParseError, "matrix row 0 is not an array");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        luclass::detail::require(row.is_array(), ErrorKind::ParseError, "matrix row is not an array");
        luclass::detail::require(static_cast<Eigen::Index>(row.size()) == cols, ErrorKind::ParseError,
                                 "ragged matrix: row " + std::to_string(i) + " has " +
                                     std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
        for (Eigen::Index k = 0; k < cols; ++k) {
            const json& e = row[static_cast<std::size_t>(k)];
            const std::string where = "entry (" + std::to_string(i) + "," + std::to_string(k) + ")";
            luclass::detail::require(e.is_array() && e.size() == 2, ErrorKind::ParseError, where + " must be [re, im]");
            m(i, k) = Complex(detail::finite_number(e[0], where), detail::finite_number(e[1], where));
        }
    }
    return m;
}

struct RawState {
    ParticleCase particle_case;
    Matrix matrix;
};

/// Structural parse only; physical validation is left to validate().
inline RawState parse_state_json(const json& j) {
    luclass::detail::require(j.is_object(), ErrorKind::ParseError, "state document must be an object");
    for (const char* key : {"case", "n", "matrix"})
        luclass::detail::require(j.contains(key), ErrorKind::ParseError, std::string("missing key '") + key + "'");
    luclass::detail::require(j["case"].is_string(), ErrorKind::ParseError, "'case' must be a string");
    luclass::detail::require(j["n"].is_number_integer(), ErrorKind::ParseError, "'n' must be an integer");
    RawState raw{parse_case(j["case"].get<std::string>()), parse_matrix(j["matrix"])};
    const auto n = j["n"].get<long long>();
    luclass::detail::require(raw.matrix.rows() == n, ErrorKind::ParseError, "'n' does not match the matrix size");
    return raw;
}

inline json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    luclass::detail::require(static_cast<bool>(in), ErrorKind::ParseError, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline QuantumState load_state(const std::string& path, double tol) {
    const RawState raw = parse_state_json(parse_text(read_file(path)));
    return validate(raw.matrix, raw.particle_case, tol);
}

inline json state_json(const QuantumState& s) {
    return json{{"case", std::string(to_string(s.particle_case()))},
                {"n", s.n_levels()},
                {"matrix", matrix_json(s.coeffs())}};
}

inline json moment_json(const MomentImage& m) {
    return json{{"q", vector_json(m.q_spectrum)},
                {"p", vector_json(m.probabilities())},
                {"case", std::string(to_string(m.particle_case))}};
}

inline json canonical_json(const CanonicalForm& cf) {
    return json{{"lambdas", vector_json(cf.lambdas)},
                {"residual", number(cf.residual)},
                {"global_phase", complex_json(cf.global_phase)},
                {"witness_u", matrix_json(cf.witness_u)},
                {"witness_v", cf.witness_v ? matrix_json(*cf.witness_v) : json(nullptr)}};
}

inline json stratum_json(const OrbitInvariants& inv) {
    json fiber = json::array();
    for (const auto& f : inv.fiber_factors)
        fiber.push_back(json{{"kind", std::string(to_string(f.kind))}, {"m", f.m}, {"dim", f.dim}});
    return json{{"d", inv.d.d},
                {"degenerate", inv.d.degenerate},
                {"flag_dim", inv.flag_dim_real},
                {"fiber", fiber},
                {"fiber_dim", inv.fiber_dim},
                {"orbit_dim", inv.orbit_dim},
                {"degeneracy", inv.degeneracy_D}};
}

inline json local_unitary_json(const LocalUnitary& g) {
    return json{{"case", std::string(to_string(g.particle_case))},
                {"u", matrix_json(g.u)},
                {"v", g.v ? matrix_json(*g.v) : json(nullptr)}};
}

inline json verdict_json(const EquivalenceVerdict& v) {
    json out{{"equivalent", v.equivalent},
             {"spectral_distance", number(v.spectral_distance)},
             {"witness", v.witness ? local_unitary_json(*v.witness) : json(nullptr)},
             {"witness_residual", v.witness_residual ? number(*v.witness_residual) : json(nullptr)},
             {"warnings", v.warnings}};
    if (v.witness_phase) out["witness"]["phase"] = complex_json(*v.witness_phase);
    return out;
}

inline json oracle_json(const OracleReport& r) {
    return json{{"orbit_dim_numeric", r.orbit_dim_numeric},
                {"symplectic_rank_numeric", r.symplectic_rank_numeric},
                {"degeneracy_numeric", r.degeneracy_numeric},
                {"formula_orbit_dim", r.formula_orbit_dim},
                {"formula_degeneracy", r.formula_degeneracy},
                {"agree", r.agree},
                {"rank_tolerance_used", number(r.rank_tolerance_used)},
                {"diagnostics", r.diagnostics}};
}

inline json counterexample_json(const CounterexampleReport& r) {
    auto spectra = [](const std::array<Eigen::Vector2d, 3>& s) {
        json out = json::array();
        for (const auto& v : s) out.push_back(json::array({number(v(0)), number(v(1))}));
        return out;
    };
    return json{{"spectra_x1", spectra(r.spectra_x1)},
                {"spectra_x2", spectra(r.spectra_x2)},
                {"max_spectral_difference", number(r.max_spectral_difference)},
                {"tangle_x1", number(r.tangle_x1)},
                {"tangle_x2", number(r.tangle_x2)},
                {"spectra_equal", r.spectra_equal},
                {"orbits_distinct", r.orbits_distinct},
                {"conclusion", r.conclusion}};
}

}  // namespace luclass::io
