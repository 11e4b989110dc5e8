#pragma once

#include <cstdint>
#include <vector>

#include "camps/entanglement.hpp"
#include "camps/mpo.hpp"
#include "camps/tensor.hpp"

namespace camps {

using TwoSiteTensor = TwoSite<cplx>;

// Open-boundary MPS, site tensors (left bond, physical=2, right bond) with
// boundary bonds of dimension 1. center is the canonical center site, or -1
// when the gauge is unknown; tensors left of the center are left isometries
// and tensors right of it are right isometries.
struct MpsState {
    long n_sites = 0;
    long max_bond = 0;
    long center = -1;
    std::vector<SiteTensor<cplx>> tensors;
};

// Normalized product state with per-site amplitudes drawn from the seed.
MpsState random_product_state(long n_sites, uint64_t seed);

// Moves the canonical center to the given site by QR sweeps from both ends.
// Preserves the state vector exactly (unitary gauge moves only).
void canonicalize(MpsState& mps, long center);

bool is_left_isometry(const SiteTensor<cplx>& t, double tol = 1e-10);
bool is_right_isometry(const SiteTensor<cplx>& t, double tol = 1e-10);

// Full state vector with site 0 as the most significant bit; L <= 14.
Eigen::VectorXcd mps_to_dense(const MpsState& mps);

// <psi|O|psi> contracted through the MPO; returns the real part (Hermitian
// operators give an imaginary part at rounding level only).
double expectation(const MpsState& mps, const MpoOperator& mpo);

struct SvdTruncation {
    SiteTensor<cplx> left;     // left isometry
    Eigen::VectorXd schmidt;   // kept singular values, renormalized
    SiteTensor<cplx> right;    // right isometry
    double discarded_weight = 0.0;
};

// Splits a two-site tensor, keeping at most max_bond singular values and
// none below cutoff * s_max (at least one always survives). The kept
// spectrum is renormalized to unit weight; discarded_weight is the sum of
// the dropped squared singular values.
SvdTruncation svd_truncate(const TwoSiteTensor& theta, long max_bond, double cutoff);

// One EntanglementData per cut 1..L-1, by sweeping the center across a copy.
std::vector<EntanglementData> entanglement_profile(const MpsState& mps);

struct EigensolveResult {
    TwoSiteTensor theta;
    double energy = 0.0;
    long matvecs = 0;
};

// Lowest eigenpair of the effective two-site operator at (bond, bond+1),
// warm-started from the current tensors. The MPS must be canonical with its
// center at bond or bond+1. Throws SolverError (carrying the best residual)
// on non-convergence.
EigensolveResult two_site_eigensolve(const MpsState& mps, const MpoOperator& mpo, long bond,
                                     double tol);

}  // namespace camps
