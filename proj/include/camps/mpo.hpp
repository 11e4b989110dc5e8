#pragma once

#include <Eigen/Dense>
#include <vector>

#include "camps/pauli.hpp"

namespace camps {

// Matrix product operator with per-site 4-index tensors
// (left bond m, phys-out s', phys-in s, right bond n), stored as a row-major
// list of 2x2 blocks: ops[m * wr + n](s', s). Boundary bonds have dimension 1.
struct MpoOperator {
    struct Site {
        long wl = 1, wr = 1;
        std::vector<Eigen::Matrix2cd> ops;

        const Eigen::Matrix2cd& at(long m, long n) const { return ops[m * wr + n]; }
        Eigen::Matrix2cd& at(long m, long n) { return ops[m * wr + n]; }
    };

    long n_sites = 0;
    std::vector<Site> sites;

    long max_bond() const;
};

// Exact MPO for a canonical Pauli sum via a left-to-right automaton over
// partial strings: one bond state per distinct remaining suffix, plus a
// not-started and a completed state. Coefficients are emitted at the first
// support site, so equal suffixes merge regardless of prefix or weight.
// An empty sum compiles to the zero MPO (all-zero 1x1 blocks).
MpoOperator compile_mpo(const PauliSum& h);

MpoOperator identity_mpo(long n_sites);

// Dense matrix of the full operator, sites contracted left to right with
// site 0 as the most significant bit. Test-scale only: L <= 10.
Eigen::MatrixXcd mpo_to_dense(const MpoOperator& mpo);

}  // namespace camps
