#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "qanneal/errors.hpp"
#include "qanneal/graph.hpp"

namespace qanneal {

using complexd = std::complex<double>;

enum class Axis { x, y, z };
enum class Model { ising, xy, dm };
enum class Trigger { none, xx, yy };

// Target model plus optional trigger term of strength g.
struct ModelSpec {
    Model model = Model::ising;
    Trigger trigger = Trigger::none;
    double trigger_strength = 0.0; // meaningful only when trigger != none
};

inline constexpr double k_hermiticity_tol = 1e-12;

// Dense 2^n x 2^n Hermitian matrix; Hermiticity is enforced on construction.
struct HermitianOperator {
    Eigen::MatrixXcd entries;

    explicit HermitianOperator(Eigen::MatrixXcd m) : entries(std::move(m)) {
        const auto d = entries.rows();
        if (d == 0 || entries.cols() != d) {
            throw validation_error("operator matrix must be square and non-empty");
        }
        if ((d & (d - 1)) != 0) {
            throw validation_error("operator dimension must be a power of two, got " +
                                   std::to_string(d));
        }
        const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
        if (!(dev <= k_hermiticity_tol)) {
            throw validation_error("matrix is not Hermitian within " +
                                   std::to_string(k_hermiticity_tol) +
                                   " (max deviation " + std::to_string(dev) + ")");
        }
    }

    Eigen::Index dim() const { return entries.rows(); }

    int n_sites() const {
        int n = 0;
        for (auto d = dim(); d > 1; d >>= 1) ++n;
        return n;
    }
};

namespace detail {

// Dense storage caps the practical site count.
inline constexpr int k_max_sites = 12;

inline void check_sites(int n_sites) {
    if (n_sites < 1 || n_sites > k_max_sites) {
        throw validation_error("n_sites must be in [1, " + std::to_string(k_max_sites) +
                               "] for dense operators, got " + std::to_string(n_sites));
    }
}

// Site s (1-based) maps to bit n_sites - s: site 1 is the most significant
// bit, so |1111...> is the last basis index. Bit value 0 is the +1 eigenstate
// of sigma_z.
inline long long site_mask(int site, int n_sites) { return 1LL << (n_sites - site); }

// Column action of a bare Pauli on one bit: whether it flips the bit, and the
// amplitude factor given the bit's current value.
inline std::pair<bool, complexd> pauli_action(Axis axis, bool bit_set) {
    switch (axis) {
        case Axis::x: return {true, complexd(1.0, 0.0)};
        case Axis::y: return {true, bit_set ? complexd(0.0, -1.0) : complexd(0.0, 1.0)};
        case Axis::z: return {false, bit_set ? complexd(-1.0, 0.0) : complexd(1.0, 0.0)};
    }
    throw validation_error("invalid axis");
}

inline void add_site_term(Eigen::MatrixXcd& m, double weight, Axis axis, int site, int n_sites) {
    const long long dim = 1LL << n_sites;
    const long long mask = site_mask(site, n_sites);
    for (long long k = 0; k < dim; ++k) {
        const auto [flip, coef] = pauli_action(axis, (k & mask) != 0);
        m(flip ? (k ^ mask) : k, k) += weight * coef;
    }
}

// weight * S_i^a S_j^b for distinct sites (operators on distinct sites commute).
inline void add_pair_term(Eigen::MatrixXcd& m, double weight, Axis a, int i, Axis b, int j,
                          int n_sites) {
    const long long dim = 1LL << n_sites;
    const long long mi = site_mask(i, n_sites);
    const long long mj = site_mask(j, n_sites);
    for (long long k = 0; k < dim; ++k) {
        const auto [fi, ci] = pauli_action(a, (k & mi) != 0);
        const auto [fj, cj] = pauli_action(b, (k & mj) != 0);
        long long row = k;
        if (fi) row ^= mi;
        if (fj) row ^= mj;
        m(row, k) += weight * ci * cj;
    }
}

inline Eigen::MatrixXcd zero_matrix(int n_sites) {
    const long long dim = 1LL << n_sites;
    return Eigen::MatrixXcd::Zero(dim, dim);
}

} // namespace detail

// Bare Pauli matrix (eigenvalues +-1) lifted to `site`, identity elsewhere;
// site 1 is the leftmost tensor factor.
inline HermitianOperator site_operator(Axis axis, int site, int n_sites) {
    detail::check_sites(n_sites);
    if (site < 1 || site > n_sites) {
        throw validation_error("site " + std::to_string(site) + " out of range [1, " +
                               std::to_string(n_sites) + "]");
    }
    Eigen::MatrixXcd m = detail::zero_matrix(n_sites);
    detail::add_site_term(m, 1.0, axis, site, n_sites);
    return HermitianOperator(std::move(m));
}

// Transverse-field driver H0 = -sum_i S_i^x; its unique ground state is the
// uniform superposition with energy -n_sites.
inline HermitianOperator build_driver(int n_sites) {
    detail::check_sites(n_sites);
    Eigen::MatrixXcd m = detail::zero_matrix(n_sites);
    for (int i = 1; i <= n_sites; ++i) detail::add_site_term(m, -1.0, Axis::x, i, n_sites);
    return HermitianOperator(std::move(m));
}

// Target Hamiltonians over the graph's undirected edges (canonical i < j
// orientation; the antisymmetric z-x term consumes that ordering) plus
// longitudinal fields:
//   ising: sum J_ij S_i^z S_j^z + sum h_i S_i^z
//   xy:    sum J_ij (S_i^x S_j^x + S_i^y S_j^y) + sum h_i S_i^z
//   dm:    sum J_ij (S_i^z S_j^x - S_i^x S_j^z) + sum h_i S_i^z
inline HermitianOperator build_target(const SpinGraph& graph, Model model) {
    detail::check_sites(graph.n_sites);
    Eigen::MatrixXcd m = detail::zero_matrix(graph.n_sites);
    for (const Edge& e : graph.edges) {
        switch (model) {
            case Model::ising:
                detail::add_pair_term(m, e.coupling, Axis::z, e.i, Axis::z, e.j, graph.n_sites);
                break;
            case Model::xy:
                detail::add_pair_term(m, e.coupling, Axis::x, e.i, Axis::x, e.j, graph.n_sites);
                detail::add_pair_term(m, e.coupling, Axis::y, e.i, Axis::y, e.j, graph.n_sites);
                break;
            case Model::dm:
                detail::add_pair_term(m, e.coupling, Axis::z, e.i, Axis::x, e.j, graph.n_sites);
                detail::add_pair_term(m, -e.coupling, Axis::x, e.i, Axis::z, e.j, graph.n_sites);
                break;
        }
    }
    for (int i = 1; i <= graph.n_sites; ++i) {
        detail::add_site_term(m, graph.fields[i - 1], Axis::z, i, graph.n_sites);
    }
    return HermitianOperator(std::move(m));
}

// Trigger term H_t = g sum_edges J_ij S_i^a S_j^a with a = x or y.
inline HermitianOperator build_trigger(const SpinGraph& graph, Trigger kind, double g) {
    detail::check_sites(graph.n_sites);
    if (kind == Trigger::none) throw validation_error("build_trigger requires kind xx or yy");
    if (!std::isfinite(g)) throw validation_error("trigger strength g must be finite");
    const Axis a = kind == Trigger::xx ? Axis::x : Axis::y;
    Eigen::MatrixXcd m = detail::zero_matrix(graph.n_sites);
    for (const Edge& e : graph.edges) {
        detail::add_pair_term(m, g * e.coupling, a, e.i, a, e.j, graph.n_sites);
    }
    return HermitianOperator(std::move(m));
}

// H(lambda) = lambda H1 + (1 - lambda) H0 [+ lambda (1 - lambda) Ht].
// Equals H0 exactly at lambda = 0 and H1 exactly at lambda = 1, with or
// without a trigger.
inline HermitianOperator interpolate(const HermitianOperator& h0, const HermitianOperator& h1,
                                     double lambda) {
    if (h0.dim() != h1.dim()) {
        throw validation_error("interpolate: operator dimensions differ (" +
                               std::to_string(h0.dim()) + " vs " + std::to_string(h1.dim()) + ")");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw validation_error("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
    return HermitianOperator(lambda * h1.entries + (1.0 - lambda) * h0.entries);
}

inline HermitianOperator interpolate(const HermitianOperator& h0, const HermitianOperator& h1,
                                     const HermitianOperator& ht, double lambda) {
    if (h0.dim() != h1.dim() || h0.dim() != ht.dim()) {
        throw validation_error("interpolate: operator dimensions differ");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw validation_error("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
    return HermitianOperator(lambda * h1.entries + (1.0 - lambda) * h0.entries +
                             (lambda * (1.0 - lambda)) * ht.entries);
}

inline HermitianOperator interpolate(const HermitianOperator& h0, const HermitianOperator& h1,
                                     const std::optional<HermitianOperator>& ht, double lambda) {
    return ht ? interpolate(h0, h1, *ht, lambda) : interpolate(h0, h1, lambda);
}

} // namespace qanneal
