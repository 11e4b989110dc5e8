#pragma once

#include <cstdint>
#include <vector>

#include "camps/clifford.hpp"
#include "camps/entanglement.hpp"
#include "camps/models.hpp"
#include "camps/mps.hpp"
#include "camps/pauli.hpp"

namespace camps {

struct CampsConfig {
    long n_sites = 0;
    Model model = Model::ising;
    double g = 1.0;
    long max_bond = 64;
    double cutoff = 1e-12;       // relative singular-value cutoff
    long n_sweeps_max = 40;      // full sweeps (one LR + one RL pass each)
    double eig_tol = 1e-9;       // local eigensolver residual target
    double energy_tol = 1e-10;   // |dE| between sweeps that counts as converged
    GateSearchMode mode = GateSearchMode::local_representatives;
    long gate_warmup_sweeps = 2; // plain-DMRG sweeps before the gate search
                                 // opens. Gates accepted while the state is
                                 // still settling freeze transient structure
                                 // into the circuit permanently; two warmup
                                 // sweeps are enough for the duality circuits
                                 // to come out clean (see README).
    long gate_search_sweeps = 0; // once open, gate search is allowed this many
                                 // sweeps; 0 = no fixed limit (stops at the
                                 // first sweep that accepts no gate either way)
    uint64_t seed = 1;
};

// One accepted gate. `bond` means sites (bond, bond+1), entropies are of the
// full two-site Schmidt spectrum just before/after the gate. Identity picks
// are never logged.
struct CircuitEntry {
    long sweep = 0;  // 1-based
    long bond = 0;
    CliffordTableau gate;
    double entropy_before = 0.0;
    double entropy_after = 0.0;
};

using CircuitLog = std::vector<CircuitEntry>;

// Output of a run. The stored state is the factor |phi>; the physical state
// is the logged circuit applied in reverse to it. `energy` is the Rayleigh
// quotient of the final state with h_conj, so it matches
// expectation(mps, compile_mpo(h_conj)) by construction.
struct CampsResult {
    double energy = 0.0;
    MpsState mps;
    PauliSum h_conj;
    CircuitLog log;
    std::vector<double> energy_history;  // one entry per completed sweep
    std::vector<EntanglementData> profile;
    bool converged = false;
};

struct DisentanglerChoice {
    CliffordTableau gate;
    TwoSiteTensor theta;  // gate already applied
    double entropy_before = 0.0;
    double entropy_after = 0.0;
};

// Scores every candidate by the von Neumann entropy of the full (untruncated)
// Schmidt spectrum of U*theta and returns the minimizer. Deterministic
// tie-breaking: the identity wins any tie within 1e-12 of the minimum,
// otherwise the candidate earliest in the set's canonical order does.
DisentanglerChoice select_disentangler(const TwoSiteTensor& theta, const GateSet& gates);

// Conjugates every term's two-site window at (bond, bond+1) by the gate and
// returns the canonical form. Term count never grows.
PauliSum apply_disentangler(const PauliSum& h, const CliffordTableau& t, long bond);

// Two-site sweeps with the disentangler step between eigensolve and
// truncation. The first gate_warmup_sweeps sweeps run plain DMRG; gate search
// then stays active until the configured sweep budget or the first searched
// sweep that accepts no gate; afterwards plain DMRG runs until the per-sweep
// energy change drops below energy_tol or n_sweeps_max is hit (the result is
// then flagged unconverged rather than throwing).
CampsResult run_camps(const CampsConfig& config, const PauliSum& h);

// Convenience form building the configured model.
CampsResult run_camps(const CampsConfig& config);

}  // namespace camps
