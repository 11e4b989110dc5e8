#include "camps/solver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "camps/sweep.hpp"

namespace camps {

namespace {

// theta regrouped as (physical pair) x (bond pair): row 2*s1 + s2 (left site
// most significant, matching tableau_to_unitary), column a + dl*b.
Eigen::MatrixXcd gather_physical(const TwoSiteTensor& th) {
    const long dl = th.dl, dr = th.dr;
    Eigen::MatrixXcd phi(4, dl * dr);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            const cplx* ip = th.m.data() + dl * s1 + 2 * dl * s2;
            for (long b = 0; b < dr; ++b)
                for (long a = 0; a < dl; ++a)
                    phi(2 * s1 + s2, a + dl * b) = ip[a + 4 * dl * b];
        }
    return phi;
}

TwoSiteTensor scatter_physical(const Eigen::MatrixXcd& phi, long dl, long dr) {
    TwoSiteTensor th(dl, dr);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            cplx* op = th.m.data() + dl * s1 + 2 * dl * s2;
            for (long b = 0; b < dr; ++b)
                for (long a = 0; a < dl; ++a)
                    op[a + 4 * dl * b] = phi(2 * s1 + s2, a + dl * b);
        }
    return th;
}

// Entropy of the Schmidt spectrum across the central cut of the regrouped
// state, via the Gram matrix on the smaller side. `total` normalizes.
double cut_entropy(const TwoSiteTensor& th, double total) {
    const auto& m = th.m;
    Eigen::MatrixXcd gram;
    if (m.rows() <= m.cols())
        gram = m * m.adjoint();
    else
        gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        double p = es.eigenvalues()(i) / total;
        if (p > 1e-30) s -= p * std::log(p);
    }
    return s;
}

}  // namespace

DisentanglerChoice select_disentangler(const TwoSiteTensor& theta, const GateSet& gates) {
    if (gates.tableaux.empty()) throw ArgumentError("empty gate set");
    const double total = theta.m.squaredNorm();
    if (!(total > 0)) throw DegenerateInputError("zero two-site tensor");

    const Eigen::MatrixXcd phi = gather_physical(theta);
    const long n = static_cast<long>(gates.tableaux.size());
    std::vector<double> entropy(n);
    long identity_idx = -1;
    for (long i = 0; i < n; ++i) {
        TwoSiteTensor cand = scatter_physical(gates.unitaries[i] * phi, theta.dl, theta.dr);
        entropy[i] = cut_entropy(cand, total);
        if (identity_idx < 0 && gates.tableaux[i].is_identity()) identity_idx = i;
    }
    if (identity_idx < 0) throw ArgumentError("gate set lacks the identity");

    double best = entropy[0];
    for (long i = 1; i < n; ++i) best = std::min(best, entropy[i]);
    long pick = identity_idx;
    if (entropy[identity_idx] > best + 1e-12) {
        for (long i = 0; i < n; ++i)
            if (entropy[i] <= best + 1e-12) {
                pick = i;
                break;
            }
    }

    DisentanglerChoice out;
    out.gate = gates.tableaux[pick];
    out.entropy_before = entropy[identity_idx];
    out.entropy_after = entropy[pick];
    out.theta = pick == identity_idx ? theta
                                     : scatter_physical(gates.unitaries[pick] * phi,
                                                        theta.dl, theta.dr);
    return out;
}

PauliSum apply_disentangler(const PauliSum& h, const CliffordTableau& t, long bond) {
    if (bond < 0 || bond + 1 >= h.n_sites()) throw ArgumentError("bond out of range");
    PauliSum out(h.n_sites());
    for (const auto& term : h.terms()) {
        PauliString window = term.str.restricted(bond, 2);
        PauliString image = conjugate_pauli(t, window);
        out.add(term.coeff, term.str.with_window(bond, image));
    }
    return canonical_form(out);
}

namespace {

bool even_y_terms(const PauliSum& h) {
    for (const auto& term : h.terms()) {
        long n_y = 0;
        for (long j : term.str.support())
            if (term.str.at(j) == Pauli::Y) ++n_y;
        if (n_y % 2 != 0) return false;
    }
    return true;
}

template <typename S>
MpsState export_state(const engine::Engine<S>& eng) {
    MpsState st;
    st.n_sites = eng.n_sites();
    st.center = 0;
    st.max_bond = 1;
    st.tensors.reserve(eng.tensors().size());
    for (const auto& t : eng.tensors()) {
        SiteTensor<cplx> c(t.dl, t.dr);
        c.m = t.m.template cast<cplx>();
        st.tensors.push_back(std::move(c));
        st.max_bond = std::max(st.max_bond, t.dr);
    }
    return st;
}

template <typename S>
CampsResult run_impl(const CampsConfig& cfg, PauliSum h_cur) {
    engine::Engine<S> eng(cfg.n_sites, cfg.max_bond, cfg.cutoff, cfg.eig_tol, 200);
    eng.set_terms(h_cur);
    eng.init_random_product(cfg.seed);
    eng.prepare();

    const GateSet* gates =
        cfg.mode != GateSearchMode::identity_only ? &gate_set(cfg.mode) : nullptr;
    bool gates_active = gates != nullptr;

    CampsResult res;
    const long L = cfg.n_sites;
    for (long sweep = 1; sweep <= cfg.n_sweeps_max; ++sweep) {
        if (gates_active && cfg.gate_search_sweeps > 0 &&
            sweep > cfg.gate_warmup_sweeps + cfg.gate_search_sweeps)
            gates_active = false;
        // Warmup sweeps settle the state first. Gates picked on an
        // unconverged state stay in the circuit forever and bury the
        // structure the converged search finds on its own.
        const bool search_now = gates_active && sweep > cfg.gate_warmup_sweeps;
        bool any_gate = false;
        eng.set_noise(engine::sweep_noise(sweep - 1));

        auto visit_bond = [&](long j, bool moving_right) {
            auto eo = eng.eigensolve_bond(j);
            if (search_now) {
                if constexpr (std::is_same_v<S, cplx>) {
                    auto choice = select_disentangler(eo.theta, *gates);
                    if (!choice.gate.is_identity()) {
                        h_cur = apply_disentangler(h_cur, choice.gate, j);
                        eng.replace_terms(h_cur);
                        eo.theta = std::move(choice.theta);
                        res.log.push_back({sweep, j, choice.gate, choice.entropy_before,
                                           choice.entropy_after});
                        any_gate = true;
                    }
                }
            }
            if (moving_right)
                eng.update_bond_lr(j, eo.theta);
            else
                eng.update_bond_rl(j, eo.theta);
        };

        for (long j = 0; j + 1 < L; ++j) visit_bond(j, true);
        for (long j = L - 2; j >= 0; --j) visit_bond(j, false);

        res.energy_history.push_back(eng.rayleigh(0));
        if (search_now && !any_gate) gates_active = false;
        if (!gates_active) {
            const auto& eh = res.energy_history;
            if (eh.size() >= 2 && std::abs(eh.back() - eh[eh.size() - 2]) < cfg.energy_tol) {
                res.converged = true;
                break;
            }
        }
    }

    res.energy = eng.rayleigh(0);
    res.mps = export_state(eng);
    res.h_conj = std::move(h_cur);
    res.profile = entanglement_profile(res.mps);
    return res;
}

}  // namespace

CampsResult run_camps(const CampsConfig& cfg, const PauliSum& h) {
    if (cfg.n_sites < 2) throw ArgumentError("need at least two sites");
    if (h.n_sites() != cfg.n_sites) throw ArgumentError("Hamiltonian size mismatch");
    if (cfg.max_bond < 2) throw ArgumentError("max_bond must be at least 2");
    if (cfg.n_sweeps_max < 1) throw ArgumentError("n_sweeps_max must be positive");
    if (!(cfg.cutoff >= 0)) throw ArgumentError("cutoff must be non-negative");
    if (cfg.gate_warmup_sweeps < 0)
        throw ArgumentError("gate_warmup_sweeps must be non-negative");

    PauliSum hc = canonical_form(h);
    if (cfg.mode == GateSearchMode::identity_only && even_y_terms(hc))
        return run_impl<double>(cfg, std::move(hc));
    return run_impl<cplx>(cfg, std::move(hc));
}

CampsResult run_camps(const CampsConfig& cfg) {
    return run_camps(cfg, build_model(cfg.model, cfg.n_sites, cfg.g));
}

}  // namespace camps
