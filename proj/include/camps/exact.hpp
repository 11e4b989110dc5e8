#pragma once

#include <Eigen/Dense>

#include "camps/entanglement.hpp"
#include "camps/pauli.hpp"

namespace camps {

struct ExactSolution {
    long L = 0;
    double energy = 0.0;
    Eigen::VectorXcd ground;
    bool degenerate = false;  // two lowest eigenvalues within 1e-10
};

// Reference ground state for chains up to L = 14: dense eigensolve for
// L <= 10, matrix-free Lanczos above that. The returned vector is normalized,
// satisfies ||H v - E v|| < 1e-10 and has its largest-magnitude amplitude
// rotated to the positive real axis (deterministic output).
ExactSolution exact_ground_state(const PauliSum& h);

// Schmidt data of the exact ground state at bond cut p in {1..L-1}.
EntanglementData exact_entanglement(const ExactSolution& sol, long cut);

}  // namespace camps
