#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qanneal/errors.hpp"
#include "qanneal/spectrum.hpp"

namespace qanneal {

// Squared singular values below this cutoff are dropped from the entropy sum.
inline constexpr double k_entropy_cutoff = 1e-14;

// Ordered split of sites into two non-empty blocks.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;
};

inline Bipartition bipartition_2_2() { return {{1, 2}, {3, 4}}; }
inline Bipartition bipartition_1_3() { return {{1}, {2, 3, 4}}; }
inline Bipartition bipartition_3_1() { return {{1, 2, 3}, {4}}; }

inline std::string bipartition_label(const Bipartition& part) {
    return std::to_string(part.left.size()) + "|" + std::to_string(part.right.size());
}

inline void validate_bipartition(const Bipartition& part, int n_sites) {
    if (part.left.empty() || part.right.empty()) {
        throw validation_error("bipartition blocks must both be non-empty");
    }
    std::vector<bool> seen(n_sites, false);
    auto mark = [&](const std::vector<int>& block) {
        for (int s : block) {
            if (s < 1 || s > n_sites) {
                throw validation_error("bipartition site " + std::to_string(s) +
                                       " out of range [1, " + std::to_string(n_sites) + "]");
            }
            if (seen[s - 1]) {
                throw validation_error("bipartition repeats site " + std::to_string(s));
            }
            seen[s - 1] = true;
        }
    };
    mark(part.left);
    mark(part.right);
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
        throw validation_error("bipartition must cover all " + std::to_string(n_sites) +
                               " sites");
    }
}

namespace detail {

inline int sites_of_dim(Eigen::Index dim) {
    int n = 0;
    for (Eigen::Index d = dim; d > 1; d >>= 1) ++n;
    if ((Eigen::Index(1) << n) != dim) {
        throw validation_error("state dimension must be a power of two");
    }
    return n;
}

// Bit of site s (1-based, site 1 = most significant) in basis index k.
inline int site_bit(long long k, int site, int n_sites) {
    return int((k >> (n_sites - site)) & 1);
}

} // namespace detail

// Von Neumann entropy (nats) of the reduced state across the bipartition:
// reshape amplitudes into A with rows indexed by the left block and columns
// by the right block (site order preserving), S = -sum sigma^2 ln sigma^2
// over singular values with sigma^2 >= cutoff.
inline double entanglement_entropy(const QuantumState& state, const Bipartition& part) {
    const int n = detail::sites_of_dim(state.amplitudes.size());
    validate_bipartition(part, n);
    const long long rows = 1LL << part.left.size();
    const long long cols = 1LL << part.right.size();
    Eigen::MatrixXcd a(rows, cols);
    for (long long k = 0; k < state.amplitudes.size(); ++k) {
        long long r = 0, c = 0;
        for (int s : part.left) r = (r << 1) | detail::site_bit(k, s, n);
        for (int s : part.right) c = (c << 1) | detail::site_bit(k, s, n);
        a(r, c) = state.amplitudes[k];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double s2 = svd.singularValues()[i] * svd.singularValues()[i];
        if (s2 < k_entropy_cutoff) continue;
        entropy -= s2 * std::log(s2);
    }
    return entropy;
}

// m = (1/N) sum_i <S_i^z>; S^z is diagonal, so this is a weighted sum of
// squared amplitudes with weight n - 2 popcount(k).
inline double mean_magnetization(const QuantumState& state) {
    const int n = detail::sites_of_dim(state.amplitudes.size());
    double m = 0.0;
    for (long long k = 0; k < state.amplitudes.size(); ++k) {
        const double w = double(n) - 2.0 * double(std::popcount(std::uint64_t(k)));
        m += std::norm(state.amplitudes[k]) * w;
    }
    return m / double(n);
}

// l1 coherence of the pure-state density matrix:
// sum_{i != j} |a_i||a_j| = (sum |a_i|)^2 - sum |a_i|^2.
inline double coherence_l1(const QuantumState& state) {
    double s1 = 0.0, s2 = 0.0;
    for (Eigen::Index k = 0; k < state.amplitudes.size(); ++k) {
        const double a = std::abs(state.amplitudes[k]);
        s1 += a;
        s2 += a * a;
    }
    return s1 * s1 - s2;
}

// Jozsa fidelity of pure states: |<target|state>|^2.
inline double fidelity(const QuantumState& state, const QuantumState& target) {
    if (state.amplitudes.size() != target.amplitudes.size()) {
        throw validation_error("fidelity: state dimensions differ");
    }
    return std::norm(target.amplitudes.dot(state.amplitudes));
}

// Total overlap with a degenerate target level: sum_k |<target_k|state>|^2
// over a mutually orthonormal target list.
inline double fidelity_to_subspace(const QuantumState& state,
                                   const std::vector<QuantumState>& targets) {
    if (targets.empty()) throw validation_error("fidelity_to_subspace: empty target list");
    for (std::size_t a = 0; a < targets.size(); ++a) {
        if (targets[a].amplitudes.size() != state.amplitudes.size()) {
            throw validation_error("fidelity_to_subspace: state dimensions differ");
        }
        for (std::size_t b = a; b < targets.size(); ++b) {
            const complexd overlap = targets[a].amplitudes.dot(targets[b].amplitudes);
            const double expected = a == b ? 1.0 : 0.0;
            if (std::abs(overlap - expected) > 1e-10) {
                throw validation_error("fidelity_to_subspace: targets are not mutually "
                                       "orthonormal within 1e-10");
            }
        }
    }
    double total = 0.0;
    for (const QuantumState& t : targets) total += fidelity(state, t);
    return total;
}

// The five figures of merit computed from one ground state (gap lives with
// the spectrum).
struct MeritSet {
    std::vector<double> entropies; // one per bipartition, in input order
    double magnetization = 0.0;
    double coherence_l1 = 0.0;
    double fidelity = 0.0;
};

inline MeritSet compute_merits(const QuantumState& state,
                               const std::vector<Bipartition>& partitions,
                               const QuantumState& target) {
    MeritSet m;
    m.entropies.reserve(partitions.size());
    for (const Bipartition& p : partitions) m.entropies.push_back(entanglement_entropy(state, p));
    m.magnetization = mean_magnetization(state);
    m.coherence_l1 = qanneal::coherence_l1(state);
    m.fidelity = qanneal::fidelity(state, target);
    return m;
}

} // namespace qanneal
