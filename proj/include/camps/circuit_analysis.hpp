#pragma once

#include <string>
#include <vector>

#include "camps/clifford.hpp"
#include "camps/mpo.hpp"
#include "camps/pauli.hpp"
#include "camps/solver.hpp"

namespace camps {

// An ordered two-qubit Clifford circuit. Gate k acts on sites
// (bond, bond + 1) and the list applies first-to-last, so conjugating a
// Hamiltonian walks the list in order.
struct Circuit {
    long n_sites = 0;
    std::vector<std::pair<long, CliffordTableau>> gates;
};

// The accepted gates of a solver run, in acceptance order.
Circuit circuit_from_log(long n_sites, const CircuitLog& log);

// Conjugates h through every gate in order and canonicalizes. The spectrum
// is preserved exactly (each step is a unitary conjugation).
PauliSum conjugate_full_hamiltonian(const PauliSum& h, const Circuit& c);

// (r_0 ⊗ ... ⊗ r_{L-1}) h (...)† for per-site single-qubit rotations.
PauliSum rotate_sites(const PauliSum& h, const std::vector<SingleQubitClifford>& r);

struct MatchReport {
    bool matched = false;
    // Per-site rotation taking h_conj onto the target; identity-filled and
    // meaningful only when matched.
    std::vector<SingleQubitClifford> local_rotation;
    // Canonical difference h_conj - target; empty when matched.
    PauliSum residual_terms;
};

// Searches per-site single-qubit rotations (24 per site, depth-first with
// pruning on letter/support multisets) such that rotating h_conj reproduces
// target term-for-term with equal coefficients. Sites outside every term's
// support are gauge-fixed to the identity.
MatchReport match_dual_model(const PauliSum& h_conj, const PauliSum& target);

enum class PatternKind { cnot_staircase, swap_pyramid_present, other };

struct PatternReport {
    PatternKind kind = PatternKind::other;
    // cnot_staircase: the ascending bond range [stair_first, stair_last].
    long stair_first = 0;
    long stair_last = -1;
    // swap_pyramid_present: widest layer of the triangle and its height.
    std::vector<long> pyramid_base;
    long pyramid_height = 0;
    std::string summary;  // human-readable matched segments
};

// Normal form used by pattern detection: gates of local interaction class
// are dropped, neighbors on disjoint bonds are sorted by bond, and same-bond
// neighbors are fused (dropped again if the fusion turns local). Idempotent.
Circuit canonicalize_circuit(const Circuit& c);

// Classifies the canonicalized circuit by the interaction classes of its
// gates: a cnot-class gate on every bond 0..L-2 in ascending order is the
// staircase; otherwise any triangle of swap-class layers (each layer a
// step-2 bond run, consecutive layers shrinking or growing by one) reports a
// pyramid; anything else is "other".
PatternReport detect_pattern(const Circuit& c);

// Exact MPO of the circuit unitary: dense 2^L x 2^L matrix, reshaped site by
// site with sequential SVDs, singular values below 1e-12 dropped. Dense
// path, so L <= 12.
MpoOperator circuit_to_mpo(const Circuit& c);

}  // namespace camps
