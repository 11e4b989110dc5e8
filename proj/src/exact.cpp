#include "camps/exact.hpp"

#include <random>

#include "camps/dense.hpp"
#include "camps/lanczos.hpp"

namespace camps {

namespace {

Eigen::VectorXcd deterministic_start(long dim) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    auto u = [&] { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    Eigen::VectorXcd v(dim);
    for (long k = 0; k < dim; ++k) v(k) = cplx(u(), u());
    v.normalize();
    return v;
}

void fix_global_phase(Eigen::VectorXcd& v) {
    long arg = 0;
    double best = 0.0;
    for (long k = 0; k < v.size(); ++k) {
        double a = std::abs(v(k));
        if (a > best) {
            best = a;
            arg = k;
        }
    }
    if (best > 0) v *= std::conj(v(arg)) / best;
}

}  // namespace

ExactSolution exact_ground_state(const PauliSum& h) {
    long L = h.n_sites();
    if (L > 14) throw SizeError("exact_ground_state limited to 14 sites");
    long dim = 1L << L;
    ExactSolution sol;
    sol.L = L;

    double second = 0.0;
    bool have_second = false;
    if (L <= 10) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(h));
        sol.energy = es.eigenvalues()(0);
        sol.ground = es.eigenvectors().col(0);
        if (dim > 1) {
            second = es.eigenvalues()(1);
            have_second = true;
        }
    } else {
        auto apply = [&](const Eigen::VectorXcd& v) { return apply_pauli_sum(h, v); };
        LanczosOptions opt;
        opt.tol = 5e-11;
        opt.max_matvecs = 20000;
        opt.krylov_dim = 80;
        auto r0 = lowest_eigenpair<cplx>(apply, deterministic_start(dim), opt);
        if (!r0.converged)
            throw SolverError("exact ground state did not converge", r0.residual);
        sol.energy = r0.eigenvalue;
        sol.ground = r0.eigenvector;
        std::vector<Eigen::VectorXcd> deflate{sol.ground};
        LanczosOptions opt2 = opt;
        opt2.tol = 1e-9;
        auto r1 = lowest_eigenpair<cplx>(apply, deterministic_start(dim), opt2, &deflate);
        if (r1.converged) {
            second = r1.eigenvalue;
            have_second = true;
        }
    }
    sol.degenerate = have_second && (second - sol.energy) < 1e-10;
    sol.ground.normalize();
    fix_global_phase(sol.ground);

    double residual = (apply_pauli_sum(h, sol.ground) - sol.energy * sol.ground).norm();
    if (residual >= 1e-10)
        throw SolverError("ground state residual too large", residual);
    return sol;
}

EntanglementData exact_entanglement(const ExactSolution& sol, long cut) {
    if (cut < 1 || cut > sol.L - 1) throw ArgumentError("cut out of range");
    return dense_entanglement(sol.ground, sol.L, cut);
}

}  // namespace camps
