#pragma once

#include <string>

#include "camps/pauli.hpp"

namespace camps {

enum class Model { ising, xxz };

Model model_from_name(const std::string& name);  // "ising" | "xxz"
std::string model_name(Model m);

// Open-boundary transverse-field Ising chain:
//   -sum_j Z_j Z_{j+1} - g sum_j X_j        (j over 0..L-2 resp. 0..L-1)
// Critical at g = 1. Result is canonical (zero-coefficient terms dropped).
PauliSum ising_chain(long L, double g);

// Open-boundary XXZ chain:
//   sum_j (X_j X_{j+1} + Y_j Y_{j+1} + g Z_j Z_{j+1})
// g = 1 is the Heisenberg chain, g = 0 the XX chain.
PauliSum xxz_chain(long L, double g);

PauliSum build_model(Model m, long L, double g);

// Fixed-boundary dual of the critical-line Ising chain:
//   -g sum_{j<L-1} Z_j Z_{j+1} - sum_{j<L-1} X_j - g Z_0
// The image of ising_chain(L, g) under the bond-ordered CNOT ladder; used as
// the matching target when analysing optimized circuits.
PauliSum dual_ising_chain(long L, double g);

// Quantum Ashkin-Teller chain with the specific boundary completion that is
// the image of xxz_chain(L, g) under its duality circuit (1-based form):
//   sum_{j=2}^{L-3} X_j X_{j+2} + sum_{j=2}^{L-1} Y_j
//   - g sum_{l=1}^{L/2-2} X_{2l} X_{2l+1} X_{2l+2} X_{2l+3}
//   - g sum_{l=1}^{L/2-1} Y_{2l} Y_{2l+1}
//   + X_1 X_2 + X_3 + X_{L-2} + X_{L-1} X_L
//   - g (X_1 X_2 X_3 + X_{L-2} X_{L-1} X_L)
// Requires even L >= 6.
PauliSum ashkin_teller_chain(long L, double g);

}  // namespace camps
