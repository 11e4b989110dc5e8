#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "camps/circuit_analysis.hpp"
#include "camps/dense.hpp"
#include "camps/errors.hpp"
#include "camps/models.hpp"
#include "camps/mpo.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace camps;

namespace {

Circuit random_circuit(testutil::Rng& rng, long n, long n_gates) {
    const auto& all = enumerate_two_qubit_cliffords().tableaux;
    Circuit c;
    c.n_sites = n;
    for (long k = 0; k < n_gates; ++k)
        c.gates.emplace_back(long(rng.below(uint64_t(n - 1))), all[rng.below(all.size())]);
    return c;
}

Circuit cnot_staircase(long n, int control) {
    Circuit c;
    c.n_sites = n;
    for (long b = 0; b + 1 < n; ++b) c.gates.emplace_back(b, CliffordTableau::cnot(control));
    return c;
}

// The uninterleave network: layers of swaps, widest first, that sort even
// sites into the left half and odd sites into the right (endpoints fixed).
Circuit swap_pyramid(long n) {
    Circuit c;
    c.n_sites = n;
    const long half = n / 2;
    for (long t = 0; t + 1 < half; ++t)
        for (long k = 0; k < half - 1 - t; ++k)
            c.gates.emplace_back(1 + t + 2 * k, CliffordTableau::swap_gate());
    return c;
}

Eigen::MatrixXcd circuit_dense(const Circuit& c) {
    const long dim = 1L << c.n_sites;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& [bond, gate] : c.gates) {
        Eigen::MatrixXcd left = Eigen::MatrixXcd::Identity(1L << bond, 1L << bond);
        Eigen::MatrixXcd right = Eigen::MatrixXcd::Identity(1L << (c.n_sites - 2 - bond),
                                                            1L << (c.n_sites - 2 - bond));
        u = testutil::kron(testutil::kron(left, tableau_to_unitary(gate)), right) * u;
    }
    return u;
}

std::vector<SingleQubitClifford> random_rotations(testutil::Rng& rng, long n) {
    const auto& singles = enumerate_single_qubit_cliffords();
    std::vector<SingleQubitClifford> r;
    for (long j = 0; j < n; ++j) r.push_back(singles[rng.below(singles.size())]);
    return r;
}

}  // namespace

TEST_CASE("empty circuit conjugation returns the canonical sum") {
    PauliSum h = ising_chain(6, 0.8);
    Circuit c;
    c.n_sites = 6;
    PauliSum out = conjugate_full_hamiltonian(h, c);
    CHECK(out == canonical_form(h));
    Circuit wrong;
    wrong.n_sites = 5;
    CHECK_THROWS_AS(conjugate_full_hamiltonian(h, wrong), ArgumentError);
}

TEST_CASE("circuit conjugation preserves the dense spectrum") {
    testutil::Rng rng(0x51ecu);
    for (int rep = 0; rep < 4; ++rep) {
        PauliSum h = testutil::random_sum(rng, 6, 8);
        Circuit c = random_circuit(rng, 6, 6);
        PauliSum hc = conjugate_full_hamiltonian(h, c);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(to_dense(h), Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(to_dense(hc), Eigen::EigenvaluesOnly);
        CHECK((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("cnot staircase maps the transverse-field chain onto its dual") {
    for (double g : {1.0, 0.6}) {
        const long L = 10;
        PauliSum hc = conjugate_full_hamiltonian(ising_chain(L, g), cnot_staircase(L, 1));
        MatchReport rep = match_dual_model(hc, dual_ising_chain(L, g));
        REQUIRE(rep.matched);
        CHECK(rep.residual_terms.n_terms() == 0);
        CHECK(rotate_sites(hc, rep.local_rotation) == canonical_form(dual_ising_chain(L, g)));
    }
}

TEST_CASE("mismatched models yield a residual, not a match") {
    const long L = 8;
    PauliSum hc = conjugate_full_hamiltonian(ising_chain(L, 1.0), cnot_staircase(L, 1));
    MatchReport rep = match_dual_model(hc, xxz_chain(L, 0.5));
    CHECK(!rep.matched);
    CHECK(rep.residual_terms.n_terms() > 0);
}

TEST_CASE("a sum matches itself with the identity rotation") {
    PauliSum h = xxz_chain(8, 0.3);
    MatchReport rep = match_dual_model(h, h);
    REQUIRE(rep.matched);
    for (const auto& r : rep.local_rotation) CHECK(r.is_identity());
    CHECK(rep.residual_terms.n_terms() == 0);
}

TEST_CASE("match recovers random per-site rotations") {
    testutil::Rng rng(0x2027u);
    for (int rep_i = 0; rep_i < 5; ++rep_i) {
        PauliSum h = testutil::random_sum(rng, 6, 8);
        auto r = random_rotations(rng, 6);
        PauliSum target = rotate_sites(h, r);
        MatchReport rep = match_dual_model(h, target);
        REQUIRE(rep.matched);
        CHECK(rotate_sites(h, rep.local_rotation) == target);
    }
}

TEST_CASE("canonicalization drops locals, fuses same-bond pairs, sorts disjoint gates") {
    const auto& singles = enumerate_single_qubit_cliffords();
    Circuit c;
    c.n_sites = 8;
    c.gates.emplace_back(4, CliffordTableau::cnot(0));
    c.gates.emplace_back(4, CliffordTableau::cnot(0));  // fuses to identity, drops
    c.gates.emplace_back(5, tensor_local(singles[3], singles[7]));  // local, drops
    c.gates.emplace_back(6, CliffordTableau::swap_gate());
    c.gates.emplace_back(1, CliffordTableau::cnot(1));  // disjoint from 6: sorts first
    Circuit n = canonicalize_circuit(c);
    REQUIRE(n.gates.size() == 2);
    CHECK(n.gates[0].first == 1);
    CHECK(interaction_class(n.gates[0].second) == InteractionClass::cnot_class);
    CHECK(n.gates[1].first == 6);
    CHECK(interaction_class(n.gates[1].second) == InteractionClass::swap_class);

    Circuit again = canonicalize_circuit(n);
    REQUIRE(again.gates.size() == n.gates.size());
    for (size_t i = 0; i < n.gates.size(); ++i) {
        CHECK(again.gates[i].first == n.gates[i].first);
        CHECK(again.gates[i].second == n.gates[i].second);
    }
}

TEST_CASE("pattern detection: staircases") {
    for (int ctrl : {0, 1}) {
        PatternReport rep = detect_pattern(cnot_staircase(8, ctrl));
        CHECK(rep.kind == PatternKind::cnot_staircase);
        CHECK(rep.stair_first == 0);
        CHECK(rep.stair_last == 6);
    }
    // Local gates interleaved and locally-equivalent gate variants keep the
    // classification.
    const auto& singles = enumerate_single_qubit_cliffords();
    Circuit c = cnot_staircase(8, 1);
    for (auto& [bond, gate] : c.gates)
        gate = compose(tensor_local(singles[5], singles[9]), gate);
    c.gates.emplace_back(3, tensor_local(singles[2], singles[11]));
    CHECK(detect_pattern(c).kind == PatternKind::cnot_staircase);
}

TEST_CASE("pattern detection: swap pyramid") {
    Circuit pyr = swap_pyramid(8);  // layers {1,3,5}, {2,4}, {3}
    PatternReport rep = detect_pattern(pyr);
    CHECK(rep.kind == PatternKind::swap_pyramid_present);
    CHECK(rep.pyramid_height == 3);
    REQUIRE(rep.pyramid_base.size() == 3);
    CHECK(rep.pyramid_base[0] == 1);
    CHECK(rep.pyramid_base[2] == 5);

    // Still present when preceded by other entangling layers, as in the
    // solver's circuits.
    Circuit mixed;
    mixed.n_sites = 8;
    for (long b = 0; b + 1 < 8; b += 2)
        mixed.gates.emplace_back(b, CliffordTableau::cnot(0));
    for (const auto& g : pyr.gates) mixed.gates.push_back(g);
    CHECK(detect_pattern(mixed).kind == PatternKind::swap_pyramid_present);

    // Growing orientation counts too.
    Circuit grow;
    grow.n_sites = 8;
    for (long t = 2; t >= 0; --t)
        for (long k = 0; k <= 2 - t; ++k) grow.gates.emplace_back(1 + t + 2 * k, CliffordTableau::swap_gate());
    CHECK(detect_pattern(grow).kind == PatternKind::swap_pyramid_present);
}

TEST_CASE("pattern detection: other") {
    Circuit empty;
    empty.n_sites = 8;
    CHECK(detect_pattern(empty).kind == PatternKind::other);

    Circuit one;
    one.n_sites = 8;
    one.gates.emplace_back(3, CliffordTableau::cnot(0));
    CHECK(detect_pattern(one).kind == PatternKind::other);

    Circuit gap = cnot_staircase(8, 1);
    gap.gates.erase(gap.gates.begin() + 3);
    CHECK(detect_pattern(gap).kind == PatternKind::other);

    Circuit desc;
    desc.n_sites = 8;
    for (long b = 6; b >= 0; --b) desc.gates.emplace_back(b, CliffordTableau::cnot(1));
    CHECK(detect_pattern(desc).kind == PatternKind::other);

    // Two isolated swaps on far-apart bonds are not a triangle.
    Circuit sparse;
    sparse.n_sites = 8;
    sparse.gates.emplace_back(1, CliffordTableau::swap_gate());
    sparse.gates.emplace_back(5, CliffordTableau::swap_gate());
    CHECK(detect_pattern(sparse).kind == PatternKind::other);
}

TEST_CASE("pattern detection is stable under re-canonicalization") {
    std::vector<Circuit> cases = {cnot_staircase(8, 1), swap_pyramid(8)};
    Circuit one;
    one.n_sites = 8;
    one.gates.emplace_back(3, CliffordTableau::cnot(0));
    cases.push_back(one);
    for (const auto& c : cases)
        CHECK(detect_pattern(c).kind == detect_pattern(canonicalize_circuit(c)).kind);
}

TEST_CASE("circuit mpo reproduces the dense unitary") {
    testutil::Rng rng(0x3c1du);
    for (int rep = 0; rep < 3; ++rep) {
        Circuit c = random_circuit(rng, 5, 4);
        MpoOperator mpo = circuit_to_mpo(c);
        CHECK((mpo_to_dense(mpo) - circuit_dense(c)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("single cnot compiles to a narrow mpo") {
    Circuit c;
    c.n_sites = 4;
    c.gates.emplace_back(1, CliffordTableau::cnot(0));
    MpoOperator mpo = circuit_to_mpo(c);
    CHECK(mpo.max_bond() <= 4);
    CHECK(mpo.sites[0].wr == 1);   // identity factor left of the gate
    CHECK(mpo.sites[2].wr == 1);   // and right of it
    CHECK((mpo_to_dense(mpo) - circuit_dense(c)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("staircase mpo bond dimension is small and size-independent") {
    // Each interior cut of an ascending staircase is straddled by exactly one
    // gate; the rest of the circuit factors into the two halves. So the
    // operator Schmidt rank per cut equals the straddling gate's rank, 2 for
    // a cnot-class gate, and never grows with L.
    long bond8 = 0;
    for (long L : {6L, 8L, 10L}) {
        MpoOperator mpo = circuit_to_mpo(cnot_staircase(L, 1));
        CHECK(mpo.max_bond() == 2);
        if (L == 8) bond8 = mpo.max_bond();
    }
    CHECK(bond8 <= 4);
    Circuit c = cnot_staircase(8, 1);
    MpoOperator mpo = circuit_to_mpo(c);
    CHECK((mpo_to_dense(mpo) - circuit_dense(c)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("swap pyramid mpo bond dimension grows past four") {
    MpoOperator mpo = circuit_to_mpo(swap_pyramid(8));
    CHECK(mpo.max_bond() > 4);
}

TEST_CASE("circuit mpo size guard") {
    Circuit big;
    big.n_sites = 13;
    CHECK_THROWS_AS(circuit_to_mpo(big), SizeError);
}
