#include <doctest.h>

#include <cmath>

#include "camps/exact.hpp"
#include "camps/models.hpp"
#include "camps/solver.hpp"
#include "camps/sweep.hpp"
#include "test_helpers.hpp"

using namespace camps;

namespace {

// Minimal DMRG driver over the raw engine: n full sweeps, no gates.
template <typename S>
double drive(engine::Engine<S>& eng, long n_sweeps) {
    const long L = eng.n_sites();
    for (long sweep = 0; sweep < n_sweeps; ++sweep) {
        eng.set_noise(engine::sweep_noise(sweep));
        for (long j = 0; j + 1 < L; ++j) {
            auto eo = eng.eigensolve_bond(j);
            eng.update_bond_lr(j, eo.theta);
        }
        for (long j = L - 2; j >= 0; --j) {
            auto eo = eng.eigensolve_bond(j);
            eng.update_bond_rl(j, eo.theta);
        }
    }
    return eng.rayleigh(0);
}

template <typename S>
engine::Engine<S> make_engine(const PauliSum& h, long max_bond, uint64_t seed) {
    engine::Engine<S> eng(h.n_sites(), max_bond, 1e-12, 1e-10, 200);
    eng.set_terms(h);
    eng.init_random_product(seed);
    eng.prepare();
    return eng;
}

PauliSum random_even_y_sum(testutil::Rng& rng, long n, long n_terms) {
    PauliSum h(n);
    for (long t = 0; t < n_terms; ++t) {
        PauliString s(n);
        long n_y = 0;
        for (long j = 0; j < n; ++j) {
            Pauli p = static_cast<Pauli>(rng.below(4));
            if (p == Pauli::Y) ++n_y;
            s.set(j, p);
        }
        if (n_y % 2 != 0) {  // flip one Y to X to keep the parity even
            for (long j = 0; j < n; ++j)
                if (s.at(j) == Pauli::Y) {
                    s.set(j, Pauli::X);
                    break;
                }
        }
        h.add(rng.symmetric(), s);
    }
    return canonical_form(h);
}

}  // namespace

TEST_CASE("engine reaches the exact ground energy of small chains") {
    PauliSum h = ising_chain(8, 1.0);
    double e0 = exact_ground_state(h).energy;

    auto ec = make_engine<cplx>(h, 32, 5);
    CHECK(std::abs(drive(ec, 6) - e0) < 1e-9);

    auto er = make_engine<double>(h, 32, 5);
    CHECK(std::abs(drive(er, 6) - e0) < 1e-9);
}

TEST_CASE("real and complex engines agree on an even-Y model") {
    PauliSum h = xxz_chain(8, 0.7);  // YY terms have two Y letters
    double e0 = exact_ground_state(h).energy;
    auto ec = make_engine<cplx>(h, 32, 11);
    auto er = make_engine<double>(h, 32, 11);
    double e_c = drive(ec, 8);
    double e_r = drive(er, 8);
    CHECK(std::abs(e_c - e0) < 1e-9);
    CHECK(std::abs(e_r - e0) < 1e-9);

    PauliString odd(8);
    odd.set(3, Pauli::Y);
    PauliSum bad(8);
    bad.add(1.0, odd);
    engine::Engine<double> er2(8, 16, 1e-12, 1e-10, 200);
    CHECK_THROWS_AS(er2.set_terms(bad), ArgumentError);
}

TEST_CASE("long-range and overlapping terms are contracted correctly") {
    testutil::Rng rng(0xabcdu);
    for (uint64_t seed : {1u, 2u}) {
        PauliSum h = random_even_y_sum(rng, 8, 14);
        if (h.n_terms() == 0) continue;
        double e0 = exact_ground_state(h).energy;
        auto ec = make_engine<cplx>(h, 48, seed);
        CHECK(std::abs(drive(ec, 10) - e0) < 1e-8);
        auto er = make_engine<double>(h, 48, seed);
        CHECK(std::abs(drive(er, 10) - e0) < 1e-8);
    }
}

TEST_CASE("constant terms shift the energy without touching the state") {
    PauliSum h = ising_chain(6, 0.8);
    PauliSum shifted = h;
    shifted.add(2.5, PauliString(6));
    double e0 = exact_ground_state(h).energy;
    auto eng = make_engine<double>(canonical_form(shifted), 32, 3);
    CHECK(std::abs(drive(eng, 6) - (e0 + 2.5)) < 1e-9);
}

TEST_CASE("conjugating terms at the active bond keeps right caches exact") {
    // A two-site gate applied at bond j only changes term letters at sites
    // j and j+1. Environments at cuts >= j+2 contract letters at sites
    // >= j+2 only, so the cached values must survive the term replacement.
    PauliSum h = xxz_chain(10, 0.5);
    auto eng = make_engine<cplx>(h, 32, 17);
    drive(eng, 3);  // realistic mid-run tensors and caches

    // Fresh sweep position: run one LR half-sweep up to bond 4, as the
    // solver would, so the right caches at cuts >= 6 date from the last RL
    // pass and are about to be consumed.
    const long bond = 4;
    for (long j = 0; j < bond; ++j) {
        auto eo = eng.eigensolve_bond(j);
        eng.update_bond_lr(j, eo.theta);
    }

    const CliffordTableau gate = CliffordTableau::cnot(0);
    PauliSum hg = apply_disentangler(h, gate, bond);
    REQUIRE_FALSE(hg == h);
    eng.replace_terms(hg);

    // Snapshot the incrementally maintained caches, then rebuild the right
    // side from scratch with the new terms and compare.
    std::vector<Mat<cplx>> hr_before;
    std::vector<std::map<engine::Signature, Mat<cplx>>> renv_before;
    for (long c = bond + 2; c <= 10; ++c) {
        hr_before.push_back(eng.right_block_h(c));
        renv_before.push_back(eng.right_envs(c));
    }
    eng.rebuild_right_caches_from_scratch(bond + 2);
    for (long c = bond + 2; c <= 10; ++c) {
        const auto& hr_now = eng.right_block_h(c);
        const auto& hr_then = hr_before[c - bond - 2];
        REQUIRE(hr_now.rows() == hr_then.rows());
        CHECK((hr_now - hr_then).cwiseAbs().maxCoeff() < 1e-12);

        const auto& envs_now = eng.right_envs(c);
        const auto& envs_then = renv_before[c - bond - 2];
        REQUIRE(envs_now.size() == envs_then.size());
        for (const auto& [sig, mat] : envs_now) {
            auto it = envs_then.find(sig);
            REQUIRE(it != envs_then.end());
            CHECK((mat - it->second).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    // Resume the interrupted sweep the way the solver would (right caches at
    // cuts <= bond+1 are stale until the next RL pass rebuilds them, and the
    // sweep only ever consumes cuts ahead of the front): the engine must
    // still converge to the conjugated model's ground energy.
    for (long j = bond; j + 1 < 10; ++j) {
        auto eo = eng.eigensolve_bond(j);
        eng.update_bond_lr(j, eo.theta);
    }
    for (long j = 8; j >= 0; --j) {
        auto eo = eng.eigensolve_bond(j);
        eng.update_bond_rl(j, eo.theta);
    }
    double e0 = exact_ground_state(hg).energy;
    CHECK(std::abs(drive(eng, 6) - e0) < 1e-8);
}

TEST_CASE("truncation respects the bond cap") {
    PauliSum h = xxz_chain(10, 1.0);
    auto eng = make_engine<cplx>(h, 8, 23);
    drive(eng, 4);
    for (const auto& t : eng.tensors()) {
        CHECK(t.dl <= 8);
        CHECK(t.dr <= 8);
    }
}
