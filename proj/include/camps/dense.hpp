#pragma once

#include <Eigen/Dense>

#include "camps/entanglement.hpp"
#include "camps/pauli.hpp"

namespace camps {

// Dense conversions use the convention that site 0 is the leftmost tensor
// factor, i.e. the MOST significant bit of the basis index.

// 2^n x 2^n matrix of a Pauli string (n <= 14).
Eigen::MatrixXcd pauli_dense(const PauliString& s);

// 2^L x 2^L matrix of a Pauli sum (L <= 14; mind the memory at the top end).
Eigen::MatrixXcd to_dense(const PauliSum& h);

// Matrix-free H|v> for iterative solvers; O(terms * 2^L).
Eigen::VectorXcd apply_pauli_sum(const PauliSum& h, const Eigen::VectorXcd& v);

// Schmidt data of a normalized dense state across sites [0, cut) | [cut, L).
// `cut` is 1-based in the public EntanglementData sense: 1 <= cut <= L-1.
EntanglementData dense_entanglement(const Eigen::VectorXcd& psi, long L, long cut);

}  // namespace camps
