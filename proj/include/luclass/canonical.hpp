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

// Congruence canonical forms.
//
//   takagi:              C =  C^t  ->  C = U diag(l) U^t
//   youla_antisymmetric: C = -C^t  ->  C = U (l_1 J + l_2 J + ... + 0) U^t
//   svd_congruence:      any C     ->  C = U diag(l) V^t
//
// The (anti)symmetric factorizations deflate one singular pair at a time. If
// work = s v w^dagger at the top singular triple, the antilinear map
// A(x) = work conj(x) / s sends v to conj(w). For symmetric work A is an
// involution on the top singular subspace and v + conj(w) is a fixed vector
// (a Takagi vector); for antisymmetric work A squares to -1 and (v, conj(w))
// span one 2x2 block. Exact degeneracies need no clustering: any vector of the
// top subspace works, and near-degenerate mixing only perturbs the deflated
// remainder by (gap) x (mixing angle).

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "luclass/states.hpp"

namespace luclass {

/// C = U diag(lambdas) U^t (Takagi) or C = U blockdiag(lambdas_j J) U^t (Youla).
struct CongruenceFactor {
    Matrix u;
    RealVector lambdas;
    double residual = 0.0;
};

/// C = U diag(lambdas) V^t.
struct SvdCongruence {
    Matrix u;
    RealVector lambdas;
    Matrix v;
    double residual = 0.0;
};

/// Unique representative of a K-orbit on the nonnegative sorted slice, with
/// witnesses in SU(N): coeffs = global_phase * U S U^t (or U S V^t), where S
/// is slice_matrix().
struct CanonicalForm {
    ParticleCase particle_case;
    Eigen::Index n_levels = 0;
    RealVector lambdas;
    Matrix witness_u;
    std::optional<Matrix> witness_v;
    Complex global_phase{1.0, 0.0};
    double residual = 0.0;

    Matrix slice_matrix() const;
    /// One-particle probabilities (eigenvalues of rho), sorted descending.
    RealVector probabilities() const;
    Matrix reconstruct() const;
};

inline constexpr double kSnapRelative = 1e-12;
inline constexpr double kCanonicalResidualTol = 1e-9;

namespace detail {

inline Matrix j2_blocks(const RealVector& lambdas, Eigen::Index n) {
    Matrix s = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < lambdas.size(); ++j) {
        s(2 * j, 2 * j + 1) = lambdas(j);
        s(2 * j + 1, 2 * j) = -lambdas(j);
    }
    return s;
}

inline void orthogonalize_against(Eigen::VectorXcd& x, const std::vector<Eigen::VectorXcd>& basis) {
    // Two passes of classical Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) x -= b * b.dot(x);
}

// Fills the columns of `basis` out to an N x N unitary.
inline Matrix complete_unitary(const std::vector<Eigen::VectorXcd>& basis, Eigen::Index n) {
    Matrix u(n, n);
    const auto r = static_cast<Eigen::Index>(basis.size());
    for (Eigen::Index j = 0; j < r; ++j) u.col(j) = basis[j];
    if (r == n) return u;
    if (r == 0) return Matrix::Identity(n, n);
    Eigen::HouseholderQR<Matrix> qr(u.leftCols(r));
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    u.rightCols(n - r) = q.rightCols(n - r);
    return u;
}

inline double snap(double value, double reference) {
    return (value < kSnapRelative * reference) ? 0.0 : value;
}

inline double residual_tolerance(const Matrix& c) { return 1e-10 * std::max(1.0, c.norm()); }

inline CongruenceFactor takagi_deflate(const Matrix& c) {
    const auto n = c.rows();
    Matrix work = (c + c.transpose()) / 2.0;
    std::vector<Eigen::VectorXcd> cols;
    std::vector<double> lambdas;
    double sigma0 = -1.0;
    for (Eigen::Index step = 0; step < n; ++step) {
        Eigen::JacobiSVD<Matrix> svd(work, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double sigma = svd.singularValues()(0);
        if (sigma0 < 0.0) sigma0 = sigma;
        if (sigma0 == 0.0 || sigma <= kSnapRelative * sigma0) break;
        const Eigen::VectorXcd v = svd.matrixU().col(0);
        const Eigen::VectorXcd w_bar = svd.matrixV().col(0).conjugate();
        Eigen::VectorXcd fixed_plus = v + w_bar;
        Eigen::VectorXcd fixed_minus = Complex(0.0, 1.0) * (v - w_bar);
        Eigen::VectorXcd y = fixed_plus.norm() >= fixed_minus.norm() ? fixed_plus : fixed_minus;
        orthogonalize_against(y, cols);
        y.normalize();
        const double lam = (y.adjoint() * work * y.conjugate())(0, 0).real();
        work -= lam * (y * y.transpose());
        work = (work + work.transpose()).eval() / 2.0;
        cols.push_back(y);
        lambdas.push_back(lam);
    }
    CongruenceFactor out;
    out.u = complete_unitary(cols, n);
    out.lambdas = RealVector::Zero(n);
    for (std::size_t j = 0; j < lambdas.size(); ++j) out.lambdas(static_cast<Eigen::Index>(j)) = lambdas[j];
    return out;
}

inline CongruenceFactor youla_deflate(const Matrix& c) {
    const auto n = c.rows();
    Matrix work = (c - c.transpose()) / 2.0;
    std::vector<Eigen::VectorXcd> cols;
    std::vector<double> lambdas;
    double sigma0 = -1.0;
    for (Eigen::Index pair = 0; 2 * pair + 1 < n; ++pair) {
        Eigen::JacobiSVD<Matrix> svd(work, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double sigma = svd.singularValues()(0);
        if (sigma0 < 0.0) sigma0 = sigma;
        if (sigma0 == 0.0 || sigma <= kSnapRelative * sigma0) break;
        Eigen::VectorXcd ua = svd.matrixU().col(0);
        Eigen::VectorXcd ub = svd.matrixV().col(0).conjugate();
        orthogonalize_against(ua, cols);
        ua.normalize();
        cols.push_back(ua);
        orthogonalize_against(ub, cols);
        ub.normalize();
        cols.push_back(ub);
        const double lam = (ua.adjoint() * work * ub.conjugate())(0, 0).real();
        work -= lam * (ua * ub.transpose() - ub * ua.transpose());
        work = (work - work.transpose()).eval() / 2.0;
        lambdas.push_back(lam);
    }
    CongruenceFactor out;
    out.u = complete_unitary(cols, n);
    out.lambdas = RealVector::Zero(n / 2);
    for (std::size_t j = 0; j < lambdas.size(); ++j) out.lambdas(static_cast<Eigen::Index>(j)) = lambdas[j];
    return out;
}

// Sorts lambdas descending, moving the matching columns (or column pairs) of u.
inline void sort_factor(CongruenceFactor& f, Eigen::Index block) {
    const auto m = f.lambdas.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&f](Eigen::Index a, Eigen::Index b) { return f.lambdas(a) > f.lambdas(b); });
    Matrix u = f.u;
    RealVector lam(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        lam(k) = f.lambdas(src);
        u.middleCols(k * block, block) = f.u.middleCols(src * block, block);
    }
    f.u = u;
    f.lambdas = lam;
}

inline void clean_lambdas(RealVector& lambdas) {
    if (lambdas.size() == 0) return;
    for (Eigen::Index j = 0; j < lambdas.size(); ++j) lambdas(j) = std::max(0.0, lambdas(j));
    const double top = lambdas.maxCoeff();
    for (Eigen::Index j = 0; j < lambdas.size(); ++j) lambdas(j) = snap(lambdas(j), top);
}

template <class Decompose, class Rebuild>
CongruenceFactor congruence_with_refinement(const Matrix& c, Decompose decompose, Rebuild rebuild,
                                            Eigen::Index block) {
    const double tol = residual_tolerance(c);
    CongruenceFactor f = decompose(c);
    sort_factor(f, block);
    clean_lambdas(f.lambdas);
    f.residual = (c - rebuild(f)).norm();
    if (f.residual <= tol) return f;

    // One refinement sweep on the nearly canonical matrix U^dagger C conj(U).
    const Matrix near = f.u.adjoint() * c * f.u.conjugate();
    CongruenceFactor g = decompose(near);
    sort_factor(g, block);
    clean_lambdas(g.lambdas);
    g.u = f.u * g.u;
    g.residual = (c - rebuild(g)).norm();
    require(g.residual <= tol, ErrorKind::ConvergenceFailure,
            "congruence residual " + std::to_string(g.residual) + " after refinement");
    return g;
}

}  // namespace detail

inline CongruenceFactor takagi(const Matrix& c) {
    detail::require(c.rows() == c.cols(), ErrorKind::NonSquareInput, "takagi needs a square matrix");
    detail::require((c - c.transpose()).norm() <= 1e-10 * std::max(1.0, c.norm()),
                    ErrorKind::SymmetryViolation, "takagi needs a complex symmetric matrix");
    auto rebuild = [](const CongruenceFactor& f) -> Matrix {
        return f.u * f.lambdas.cast<Complex>().asDiagonal() * f.u.transpose();
    };
    return detail::congruence_with_refinement(c, detail::takagi_deflate, rebuild, 1);
}

inline CongruenceFactor youla_antisymmetric(const Matrix& c) {
    detail::require(c.rows() == c.cols(), ErrorKind::NonSquareInput, "youla needs a square matrix");
    detail::require((c + c.transpose()).norm() <= 1e-10 * std::max(1.0, c.norm()),
                    ErrorKind::SymmetryViolation, "youla needs a complex antisymmetric matrix");
    const auto n = c.rows();
    auto rebuild = [n](const CongruenceFactor& f) -> Matrix {
        return f.u * detail::j2_blocks(f.lambdas, n) * f.u.transpose();
    };
    // Sorting moves column pairs; an odd trailing column stays in place.
    auto decompose = [](const Matrix& m) { return detail::youla_deflate(m); };
    return detail::congruence_with_refinement(c, decompose, rebuild, 2);
}

inline SvdCongruence svd_congruence(const Matrix& c) {
    detail::require(c.rows() == c.cols(), ErrorKind::NonSquareInput, "svd_congruence needs a square matrix");
    detail::require(c.norm() > 0.0, ErrorKind::ZeroState, "svd_congruence needs a nonzero matrix");
    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdCongruence out{svd.matrixU(), svd.singularValues(), svd.matrixV().conjugate(), 0.0};
    detail::clean_lambdas(out.lambdas);
    out.residual = (c - out.u * out.lambdas.cast<Complex>().asDiagonal() * out.v.transpose()).norm();
    return out;
}

inline Matrix CanonicalForm::slice_matrix() const {
    if (particle_case == ParticleCase::Fermion) return detail::j2_blocks(lambdas, n_levels);
    return lambdas.cast<Complex>().asDiagonal();
}

inline RealVector CanonicalForm::probabilities() const {
    RealVector p = RealVector::Zero(n_levels);
    if (particle_case == ParticleCase::Fermion) {
        for (Eigen::Index j = 0; j < lambdas.size(); ++j) {
            p(2 * j) = lambdas(j) * lambdas(j);
            p(2 * j + 1) = lambdas(j) * lambdas(j);
        }
    } else {
        p = lambdas.array().square();
    }
    const double total = p.sum();
    if (total > 0.0) p /= total;
    return p;
}

inline Matrix CanonicalForm::reconstruct() const {
    const Matrix s = slice_matrix();
    if (witness_v) return global_phase * witness_u * s * witness_v->transpose();
    return global_phase * witness_u * s * witness_u.transpose();
}

namespace detail {

// Rescales a unitary into SU(N); returns the removed phase e^{i arg(det)/N}.
inline Complex to_special_unitary(Matrix& u) {
    const Complex root = std::polar(1.0, std::arg(u.determinant()) / static_cast<double>(u.rows()));
    u /= root;
    return root;
}

}  // namespace detail

/// Case-dispatched reduction to the slice. Throws ConvergenceFailure if the
/// reconstruction residual exceeds 1e-9.
inline CanonicalForm canonicalize(const QuantumState& s) {
    const Matrix& c = s.coeffs();
    const auto n = s.n_levels();
    CanonicalForm cf;
    cf.particle_case = s.particle_case();
    cf.n_levels = n;
    switch (s.particle_case()) {
        case ParticleCase::Boson: {
            CongruenceFactor f = takagi(c);
            cf.lambdas = f.lambdas;
            cf.witness_u = f.u;
            const Complex root = detail::to_special_unitary(cf.witness_u);
            cf.global_phase = root * root;
            break;
        }
        case ParticleCase::Fermion: {
            CongruenceFactor f = youla_antisymmetric(c);
            cf.lambdas = f.lambdas;
            cf.witness_u = f.u;
            const Complex root = detail::to_special_unitary(cf.witness_u);
            cf.global_phase = root * root;
            break;
        }
        case ParticleCase::Distinguishable: {
            SvdCongruence f = svd_congruence(c);
            cf.lambdas = f.lambdas;
            cf.witness_u = f.u;
            Matrix v = f.v;
            const Complex ru = detail::to_special_unitary(cf.witness_u);
            const Complex rv = detail::to_special_unitary(v);
            cf.witness_v = std::move(v);
            cf.global_phase = ru * rv;
            break;
        }
    }
    cf.residual = (c - cf.reconstruct()).norm();
    detail::require(cf.residual <= kCanonicalResidualTol, ErrorKind::ConvergenceFailure,
                    "canonical form residual " + std::to_string(cf.residual));
    return cf;
}

}  // namespace luclass
