#include <doctest.h>

#include <map>
#include <set>

#include "camps/clifford.hpp"
#include "camps/dense.hpp"
#include "test_helpers.hpp"

using namespace camps;
using testutil::Rng;

namespace {

// In-test dense conjugation oracle.
bool conjugation_matches(const CliffordTableau& t, const Eigen::Matrix4cd& u) {
    for (int a = 0; a < 16; ++a) {
        PauliString p(2);
        p.set(0, static_cast<Pauli>(a % 4));
        p.set(1, static_cast<Pauli>(a / 4));
        Eigen::MatrixXcd expect = u * testutil::string_dense(p) * u.adjoint();
        Eigen::MatrixXcd got = testutil::string_dense(conjugate_pauli(t, p));
        if ((expect - got).norm() > 1e-12) return false;
    }
    return true;
}

std::vector<double> schmidt_fingerprint(const Eigen::Matrix4cd& u, const Eigen::Vector4cd& theta) {
    Eigen::Vector4cd v = u * theta;
    Eigen::Matrix2cd m;
    // Basis order |s1 s2>, left site most significant: rows s1, cols s2.
    m << v(0), v(1), v(2), v(3);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    return {svd.singularValues()(0), svd.singularValues()(1)};
}

}  // namespace

TEST_CASE("named gates and the bit-exact tableau encoding") {
    CliffordTableau cnot0 = CliffordTableau::cnot(0);
    CHECK(cnot0.encode() == "X1->+XX;Z1->+ZI;X2->+IX;Z2->+ZZ");
    CHECK(CliffordTableau::decode(cnot0.encode()) == cnot0);
    CHECK(CliffordTableau().encode() == "X1->+XI;Z1->+ZI;X2->+IX;Z2->+IZ");
    CHECK(CliffordTableau().is_identity());

    CHECK_THROWS_AS(CliffordTableau::decode("X1->+XX"), FormatError);
    CHECK_THROWS_AS(CliffordTableau::decode("X1->*XX;Z1->+ZI;X2->+IX;Z2->+ZZ"), FormatError);
    // Well-formed text with broken symplectic relations:
    CHECK_THROWS_AS(CliffordTableau::decode("X1->+XI;Z1->+XI;X2->+IX;Z2->+IZ"),
                    InvalidTableauError);

    // Frozen dense forms.
    Eigen::Matrix4cd cnot_dense;
    cnot_dense << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
    CHECK(tableau_from_unitary(cnot_dense) == cnot0);
    Eigen::Matrix4cd swap_dense;
    swap_dense << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
    CHECK(tableau_from_unitary(swap_dense) == CliffordTableau::swap_gate());

    CHECK(conjugation_matches(cnot0, cnot_dense));
    CHECK(conjugation_matches(CliffordTableau::swap_gate(), swap_dense));
}

TEST_CASE("appendix-style gate table entries conjugate as documented") {
    // Gate A: XI->+ZZ, ZI->+YZ, IX->+IZ, IZ->+XX.
    CliffordTableau a = CliffordTableau::from_images(PauliString("ZZ"), PauliString("YZ"),
                                                     PauliString("IZ"), PauliString("XX"));
    CHECK(conjugate_pauli(a, PauliString("XI")).str() == "+ZZ");
    CHECK(conjugate_pauli(a, PauliString("IX")).str() == "+IZ");
    CHECK(conjugate_pauli(a, PauliString("ZI")).str() == "+YZ");
    CHECK(conjugate_pauli(a, PauliString("IZ")).str() == "+XX");
    // It is a valid Clifford: the dense unitary reproduces all 16 conjugations.
    CHECK(conjugation_matches(a, tableau_to_unitary(a)));

    CliffordTableau s = CliffordTableau::swap_gate();
    CHECK(conjugate_pauli(s, PauliString("XI")).str() == "+IX");
    CHECK(conjugate_pauli(s, PauliString("IZ")).str() == "+ZI");

    // CNOT with control on the left: XI->XX, IZ->ZZ, ZI->ZI, IX->IX.
    CliffordTableau c = CliffordTableau::cnot(0);
    CHECK(conjugate_pauli(c, PauliString("XI")).str() == "+XX");
    CHECK(conjugate_pauli(c, PauliString("IZ")).str() == "+ZZ");
    CHECK(conjugate_pauli(c, PauliString("ZI")).str() == "+ZI");
    CHECK(conjugate_pauli(c, PauliString("IX")).str() == "+IX");

    CHECK_THROWS_AS(conjugate_pauli(c, PauliString("XXX")), ArgumentError);
}

TEST_CASE("composition, inverse and unitary round trips") {
    const GateSet& full = enumerate_two_qubit_cliffords();
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const CliffordTableau& a = full.tableaux[rng.below(full.tableaux.size())];
        const CliffordTableau& b = full.tableaux[rng.below(full.tableaux.size())];
        const CliffordTableau& c = full.tableaux[rng.below(full.tableaux.size())];
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        CHECK(compose(a, inverse(a)).is_identity());
        CHECK(compose(inverse(a), a).is_identity());
        // compose(a,b) must conjugate like the matrix product.
        Eigen::Matrix4cd uab =
            tableau_to_unitary(a) * tableau_to_unitary(b);
        CHECK(conjugation_matches(compose(a, b), uab));
        CHECK(tableau_from_unitary(tableau_to_unitary(a)) == a);
    }
    // Non-Clifford input is rejected.
    Eigen::Matrix4cd t_gate = Eigen::Matrix4cd::Identity();
    t_gate(3, 3) = std::exp(cplx(0, M_PI / 4));
    CHECK_THROWS_AS(tableau_from_unitary(t_gate), InvalidTableauError);
    Eigen::Matrix4cd not_unitary = Eigen::Matrix4cd::Identity() * 2.0;
    CHECK_THROWS_AS(tableau_from_unitary(not_unitary), InvalidTableauError);
}

TEST_CASE("full group enumeration") {
    const GateSet& full = enumerate_two_qubit_cliffords();
    CHECK(full.tableaux.size() == 11520);
    CHECK(full.mode == GateSearchMode::full_group);

    std::set<uint32_t> keys;
    for (const auto& t : full.tableaux) keys.insert(t.key());
    CHECK(keys.size() == full.tableaux.size());  // no duplicates
    CHECK(keys.count(CliffordTableau().key()) == 1);
    CHECK(keys.count(CliffordTableau::cnot(0).key()) == 1);
    CHECK(keys.count(CliffordTableau::swap_gate().key()) == 1);

    // Every element re-validates through from_images (symplectic invariant).
    for (const auto& t : full.tableaux)
        CHECK_NOTHROW(CliffordTableau::from_images(t.image(0), t.image(1), t.image(2),
                                                   t.image(3)));

    // Independent closure from a different generating set {H1, H2, S1, S2, CZ}.
    Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
    cz(3, 3) = -1;
    std::vector<CliffordTableau> gens = {
        CliffordTableau::hadamard(0), CliffordTableau::hadamard(1),
        CliffordTableau::phase_gate(0), CliffordTableau::phase_gate(1),
        tableau_from_unitary(cz)};
    std::set<uint32_t> closure{CliffordTableau().key()};
    std::vector<CliffordTableau> frontier{CliffordTableau()};
    while (!frontier.empty()) {
        std::vector<CliffordTableau> next;
        for (const auto& t : frontier)
            for (const auto& g : gens) {
                CliffordTableau u = compose(g, t);
                if (closure.insert(u.key()).second) next.push_back(u);
            }
        frontier = std::move(next);
    }
    CHECK(closure.size() == full.tableaux.size());
}

TEST_CASE("local-equivalence reduction yields 20 canonical classes") {
    const GateSet& full = enumerate_two_qubit_cliffords();
    GateSet reps = reduce_by_local_equivalence(full);
    CHECK(reps.mode == GateSearchMode::local_representatives);
    CHECK(reps.tableaux.size() == 20);
    CHECK(reps.tableaux.front().is_identity());  // class-major order: local class first
    for (size_t i = 1; i < reps.tableaux.size(); ++i)
        CHECK(tableau_order_key(reps.tableaux[i - 1]) < tableau_order_key(reps.tableaux[i]));
    // Class-major order puts every cnot-class gate before every iswap-class
    // gate, so the site-order-preserving member of each spectral tie wins.
    std::map<InteractionClass, std::pair<size_t, size_t>> span;
    for (size_t i = 0; i < reps.tableaux.size(); ++i) {
        InteractionClass c = interaction_class(reps.tableaux[i]);
        if (!span.count(c)) span[c] = {i, i};
        span[c].second = i;
    }
    CHECK(span[InteractionClass::cnot_class].second < span[InteractionClass::iswap_class].first);
    CHECK(span[InteractionClass::local_class] == std::pair<size_t, size_t>{0, 0});
    CHECK(span[InteractionClass::swap_class].first == 19);

    const auto& singles = enumerate_single_qubit_cliffords();
    REQUIRE(singles.size() == 24);
    CHECK(singles.front().is_identity());

    // H1 is a left local factor, so it reduces to the identity's class.
    CliffordTableau h1 = CliffordTableau::hadamard(0);
    std::set<uint32_t> rep_keys;
    for (const auto& t : reps.tableaux) rep_keys.insert(t.key());
    // Class membership: minimize over all left locals.
    auto class_rep_key = [&](const CliffordTableau& g) {
        uint32_t best = ~0u;
        for (const auto& u : singles)
            for (const auto& v : singles) {
                uint32_t k = compose(tensor_local(u, v), g).key();
                best = std::min(best, k);
            }
        return best;
    };
    CHECK(class_rep_key(h1) == CliffordTableau().key());

    // Sampled elements: their class minimum must be one of the returned reps,
    // and class sizes partition the group (20 * 576 == 11520).
    Rng rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const CliffordTableau& g = full.tableaux[rng.below(full.tableaux.size())];
        CHECK(rep_keys.count(class_rep_key(g)) == 1);
    }
    CHECK(reps.tableaux.size() * 576 == full.tableaux.size());

    CHECK_THROWS_AS(reduce_by_local_equivalence(reps), ArgumentError);
}

TEST_CASE("left locals never change the Schmidt spectrum of the gated state") {
    const GateSet& reps = gate_set(GateSearchMode::local_representatives);
    const auto& singles = enumerate_single_qubit_cliffords();
    Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        Eigen::Vector4cd theta = testutil::random_state(rng, 4);
        const CliffordTableau& g = reps.tableaux[rng.below(reps.tableaux.size())];
        Eigen::Matrix4cd ug = tableau_to_unitary(g);
        auto base = schmidt_fingerprint(ug, theta);
        const auto& u = singles[rng.below(24)];
        const auto& v = singles[rng.below(24)];
        Eigen::Matrix4cd ul = tableau_to_unitary(tensor_local(u, v));
        auto shifted = schmidt_fingerprint(ul * ug, theta);
        CHECK(base[0] == doctest::Approx(shifted[0]).epsilon(1e-10));
        CHECK(base[1] == doctest::Approx(shifted[1]).epsilon(1e-10));
    }
}

TEST_CASE("representative classes pair up under the transpose symmetry") {
    // spectrum(U theta) depends on the coefficient matrix only through its
    // singular values, and transposing that matrix is a left SWAP.  So the 20
    // classes give exactly 10 distinct spectral fingerprints, paired by
    // left-multiplication with SWAP.
    const GateSet& reps = gate_set(GateSearchMode::local_representatives);
    const auto& singles = enumerate_single_qubit_cliffords();
    Rng rng(99);
    std::vector<Eigen::Vector4cd> thetas;
    for (int k = 0; k < 3; ++k) thetas.push_back(testutil::random_state(rng, 4));
    std::map<std::vector<long>, std::vector<uint32_t>> groups;
    for (size_t i = 0; i < reps.tableaux.size(); ++i) {
        std::vector<long> fp;
        for (const auto& th : thetas) {
            auto sv = schmidt_fingerprint(reps.unitaries[i], th);
            fp.push_back(std::lround(sv[0] * 1e9));
        }
        groups[fp].push_back(reps.tableaux[i].key());
    }
    CHECK(groups.size() == 10);
    auto class_rep_key = [&](const CliffordTableau& g) {
        uint32_t best = ~0u;
        for (const auto& u : singles)
            for (const auto& v : singles)
                best = std::min(best, compose(tensor_local(u, v), g).key());
        return best;
    };
    const auto& full = enumerate_two_qubit_cliffords();
    std::map<uint32_t, size_t> index_by_key;
    for (size_t i = 0; i < reps.tableaux.size(); ++i) index_by_key[reps.tableaux[i].key()] = i;
    for (const auto& [fp, keys] : groups) {
        REQUIRE(keys.size() == 2);
        const CliffordTableau& g = reps.tableaux[index_by_key[keys[0]]];
        CHECK(class_rep_key(compose(CliffordTableau::swap_gate(), g)) == keys[1]);
    }
    (void)full;
}

TEST_CASE("two-sided interaction classes") {
    const GateSet& full = enumerate_two_qubit_cliffords();
    std::map<InteractionClass, long> counts;
    for (const auto& t : full.tableaux) ++counts[interaction_class(t)];
    CHECK(counts[InteractionClass::local_class] == 576);
    CHECK(counts[InteractionClass::cnot_class] == 5184);
    CHECK(counts[InteractionClass::iswap_class] == 5184);
    CHECK(counts[InteractionClass::swap_class] == 576);

    CHECK(interaction_class(CliffordTableau()) == InteractionClass::local_class);
    CHECK(interaction_class(CliffordTableau::hadamard(0)) == InteractionClass::local_class);
    CHECK(interaction_class(CliffordTableau::cnot(0)) == InteractionClass::cnot_class);
    CHECK(interaction_class(CliffordTableau::cnot(1)) == InteractionClass::cnot_class);
    CHECK(interaction_class(CliffordTableau::swap_gate()) == InteractionClass::swap_class);
    Eigen::Matrix4cd iswap = Eigen::Matrix4cd::Zero();
    iswap(0, 0) = 1;
    iswap(3, 3) = 1;
    iswap(1, 2) = cplx(0, 1);
    iswap(2, 1) = cplx(0, 1);
    CHECK(interaction_class(tableau_from_unitary(iswap)) == InteractionClass::iswap_class);

    // Brute-force double cosets around the four anchors reproduce the counts.
    const auto& singles = enumerate_single_qubit_cliffords();
    auto double_coset_size = [&](const CliffordTableau& anchor) {
        std::set<uint32_t> seen;
        for (const auto& u : singles)
            for (const auto& v : singles) {
                CliffordTableau left = compose(tensor_local(u, v), anchor);
                for (const auto& p : singles)
                    for (const auto& q : singles)
                        seen.insert(compose(left, tensor_local(p, q)).key());
            }
        return seen.size();
    };
    CHECK(double_coset_size(CliffordTableau()) == 576);
    CHECK(double_coset_size(CliffordTableau::swap_gate()) == 576);
    CHECK(double_coset_size(CliffordTableau::cnot(0)) == 5184);
    CHECK(double_coset_size(tableau_from_unitary(iswap)) == 5184);
}

TEST_CASE("single-qubit rotations act consistently with their 2-site embedding") {
    const auto& singles = enumerate_single_qubit_cliffords();
    for (const auto& u : singles) {
        CliffordTableau embedded = tensor_local(u, SingleQubitClifford());
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliString in(2);
            in.set(0, p);
            PauliString out = conjugate_pauli(embedded, in);
            auto [letter, sign] = u.conj_letter(p);
            CHECK(out.at(0) == letter);
            CHECK(out.at(1) == Pauli::I);
            CHECK(out.sign() == sign);
        }
        CHECK(u.conj_letter(Pauli::I).first == Pauli::I);
    }
    // Encode smoke check on the Hadamard-like rotation (X->Z, Z->X).
    SingleQubitClifford had = SingleQubitClifford::from_images(PauliString("Z"), PauliString("X"));
    CHECK(had.encode() == "X->+Z;Z->+X");
    CHECK_THROWS_AS(SingleQubitClifford::from_images(PauliString("Z"), PauliString("Z")),
                    InvalidTableauError);
}

TEST_CASE("gate_set caches all three modes") {
    CHECK(gate_set(GateSearchMode::identity_only).tableaux.size() == 1);
    CHECK(gate_set(GateSearchMode::identity_only).tableaux[0].is_identity());
    CHECK(gate_set(GateSearchMode::local_representatives).tableaux.size() == 20);
    CHECK(gate_set(GateSearchMode::full_group).tableaux.size() == 11520);
    CHECK(gate_search_mode_from_name("full_group") == GateSearchMode::full_group);
    CHECK(gate_search_mode_name(GateSearchMode::identity_only) == "identity_only");
    CHECK_THROWS_AS(gate_search_mode_from_name("everything"), ArgumentError);
}
