#pragma once

#include <bit>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qanneal/errors.hpp"
#include "qanneal/operators.hpp"

namespace qanneal {

inline constexpr double k_state_norm_tol = 1e-12;
inline constexpr double k_default_degeneracy_rel_tol = 1e-9;
inline constexpr double k_default_refine_tol = 1e-6;

// Normalized amplitude vector in the computational (S^z product) basis with a
// fixed global phase: the largest-magnitude amplitude is real non-negative
// (ties broken by lowest basis index).
struct QuantumState {
    Eigen::VectorXcd amplitudes;
};

inline QuantumState canonical_state(Eigen::VectorXcd v) {
    if (v.size() == 0) throw validation_error("state vector must be non-empty");
    if (std::abs(v.norm() - 1.0) > k_state_norm_tol) {
        throw validation_error("state vector must have unit norm within " +
                               std::to_string(k_state_norm_tol));
    }
    Eigen::Index imax = 0;
    double amax = -1.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double a = std::abs(v[k]);
        if (a > amax) {
            amax = a;
            imax = k;
        }
    }
    v *= std::conj(v[imax]) / amax;
    v[imax] = amax; // exact: real, non-negative
    return QuantumState{std::move(v)};
}

// Test/construction helper: rescale to unit norm, then canonicalize.
inline QuantumState normalized_state(Eigen::VectorXcd v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw validation_error("cannot normalize a zero or non-finite vector");
    }
    return canonical_state(v / n);
}

// Full eigensystem, energies ascending, states phase-canonicalized.
struct EigenSystem {
    Eigen::VectorXd energies;
    std::vector<QuantumState> states;

    Eigen::Index dim() const { return energies.size(); }
};

inline EigenSystem diagonalize(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("eigensolver failed to converge (dim " + std::to_string(h.dim()) +
                              ", max |entry| " +
                              std::to_string(h.entries.cwiseAbs().maxCoeff()) + ")");
    }
    // Residual invariant: ||H v - E v|| small relative to the operator scale.
    const double scale = std::max(1.0, h.entries.cwiseAbs().maxCoeff() * double(h.dim()));
    const double residual =
        (h.entries * solver.eigenvectors() -
         solver.eigenvectors() * solver.eigenvalues().asDiagonal())
            .cwiseAbs()
            .maxCoeff();
    if (!(residual <= 1e-10 * scale)) {
        throw numerical_error("eigendecomposition residual " + std::to_string(residual) +
                              " exceeds tolerance (dim " + std::to_string(h.dim()) + ")");
    }
    EigenSystem es;
    es.energies = solver.eigenvalues();
    es.states.reserve(h.dim());
    for (Eigen::Index k = 0; k < h.dim(); ++k) {
        es.states.push_back(canonical_state(solver.eigenvectors().col(k)));
    }
    return es;
}

// First excitation energy E1 - E0 (non-negative: energies are ascending).
inline double energy_gap(const EigenSystem& es) {
    if (es.dim() < 2) throw validation_error("energy_gap requires dimension >= 2");
    return es.energies[1] - es.energies[0];
}

// Number of levels within rel_tol * max(1, spectral range) of the ground energy.
inline int ground_degeneracy(const EigenSystem& es,
                             double rel_tol = k_default_degeneracy_rel_tol) {
    if (es.dim() < 1) throw validation_error("ground_degeneracy requires a non-empty spectrum");
    if (!(rel_tol > 0.0)) throw validation_error("degeneracy rel_tol must be positive");
    const double range = es.energies[es.dim() - 1] - es.energies[0];
    const double thresh = rel_tol * std::max(1.0, range);
    int count = 0;
    while (count < es.dim() && es.energies[count] - es.energies[0] <= thresh) ++count;
    return count;
}

// Ground state with a solver-independent convention. Within a degenerate
// ground space the eigenvector basis is arbitrary, so the space is resolved
// by re-diagonalizing total S^z restricted to it and taking the lowest
// eigenvalue's state — the ground state's continuation under a slightly
// stronger longitudinal field.
inline QuantumState canonical_ground_state(const EigenSystem& es,
                                           double rel_tol = k_default_degeneracy_rel_tol) {
    const int deg = ground_degeneracy(es, rel_tol);
    if (deg == 1) return es.states[0];
    const Eigen::Index dim = es.dim();
    int n = 0;
    for (Eigen::Index d = dim; d > 1; d >>= 1) ++n;
    Eigen::MatrixXcd restricted(deg, deg);
    for (int a = 0; a < deg; ++a) {
        for (int b = 0; b < deg; ++b) {
            complexd sum = 0.0;
            for (Eigen::Index k = 0; k < dim; ++k) {
                const double mz = double(n) - 2.0 * double(std::popcount(std::uint64_t(k)));
                sum += std::conj(es.states[a].amplitudes[k]) * es.states[b].amplitudes[k] * mz;
            }
            restricted(a, b) = sum;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(restricted);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("ground-space S^z resolution failed to converge");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (int a = 0; a < deg; ++a) v += solver.eigenvectors()(a, 0) * es.states[a].amplitudes;
    return canonical_state(v / v.norm());
}

struct MinGap {
    double lambda = 0.0;
    double gap = 0.0;
};

// Golden-section minimization of gap_fn over [lo, hi] to width tol in lambda.
// Returns the best point among all evaluations, endpoints included.
inline MinGap refine_min_gap(const std::function<double(double)>& gap_fn, double lo, double hi,
                             double tol = k_default_refine_tol) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw validation_error("refine bracket must satisfy 0 <= lo < hi <= 1");
    }
    if (!(tol > 0.0)) throw validation_error("refine tol must be positive");
    MinGap best{lo, std::numeric_limits<double>::infinity()};
    auto eval = [&](double lambda) {
        const double g = gap_fn(lambda);
        if (!std::isfinite(g)) {
            throw numerical_error("non-finite gap at lambda=" + std::to_string(lambda));
        }
        if (g < best.gap) best = {lambda, g};
        return g;
    };
    eval(lo);
    eval(hi);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = eval(d);
        }
    }
    return best;
}

} // namespace qanneal
