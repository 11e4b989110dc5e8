#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "camps/pauli.hpp"

namespace camps {

// A two-qubit Clifford unitary represented by the conjugation images of the
// generators X1, Z1, X2, Z2 (each a signed 2-site Pauli). Global phase is not
// represented. Site "1" is the left site of the bond the gate acts on.
class CliffordTableau {
  public:
    CliffordTableau();  // identity

    // Validates Hermitian signs and the symplectic relations; throws
    // InvalidTableauError otherwise.
    static CliffordTableau from_images(const PauliString& img_x1, const PauliString& img_z1,
                                       const PauliString& img_x2, const PauliString& img_z2);

    // k in 0..3 for the images of X1, Z1, X2, Z2.
    PauliString image(int k) const;

    bool is_identity() const;

    // Packed 20-bit encoding, 5 bits per image in order X1,Z1,X2,Z2:
    // (sign << 4) | (left letter << 2) | right letter, letter codes
    // I=0, X=1, Z=2, Y=3. Lexicographic tableau order == numeric key order,
    // and the identity is the minimum of its single-qubit coset.
    uint32_t key() const;

    bool operator==(const CliffordTableau& o) const { return key() == o.key(); }
    bool operator!=(const CliffordTableau& o) const { return !(*this == o); }

    // Bit-exact text form "X1->+XX;Z1->+ZI;X2->+IX;Z2->+ZZ" (that example is
    // the CNOT with control on the left site).
    std::string encode() const;
    static CliffordTableau decode(const std::string& text);

    // Named gates; `site` and `control` are 0 (left) or 1 (right).
    static CliffordTableau hadamard(int site);
    static CliffordTableau phase_gate(int site);
    static CliffordTableau cnot(int control);
    static CliffordTableau swap_gate();

    struct Packed {
        // xz bits: left x = bit0, left z = bit1, right x = bit2, right z = bit3.
        // q: quarter turns, operator = i^q * literal letters.
        uint8_t xz = 0;
        uint8_t q = 0;
    };
    const std::array<Packed, 4>& packed_images() const { return img_; }
    static CliffordTableau from_packed(const std::array<Packed, 4>& img);  // validates

  private:
    std::array<Packed, 4> img_;
};

// U p U† for a 2-site Pauli p (any phase); preserves Hermiticity.
PauliString conjugate_pauli(const CliffordTableau& t, const PauliString& p);

// Tableau of a∘b (b applied first).
CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b);

CliffordTableau inverse(const CliffordTableau& t);

// Dense 4x4 unitary with the image relations U g U† = image(g); the global
// phase is fixed by making the first nonzero entry (column-major scan) real
// positive. Basis order |00>,|01>,|10>,|11> with the LEFT site the most
// significant bit.
Eigen::Matrix4cd tableau_to_unitary(const CliffordTableau& t);

// Inverse of the above for any Clifford unitary (global phase ignored);
// throws InvalidTableauError when u is not Clifford.
CliffordTableau tableau_from_unitary(const Eigen::Matrix4cd& u);

enum class GateSearchMode { full_group, local_representatives, identity_only };

GateSearchMode gate_search_mode_from_name(const std::string& name);
std::string gate_search_mode_name(GateSearchMode m);

struct GateSet {
    GateSearchMode mode = GateSearchMode::identity_only;
    std::vector<CliffordTableau> tableaux;       // tableau_order_key ascending, no duplicates
    std::vector<Eigen::Matrix4cd> unitaries;     // aligned with tableaux
};

// All 11520 two-qubit Clifford tableaux (phase excluded by representation),
// via breadth-first closure over {H1, H2, S1, S2, CNOT(0), CNOT(1)}.
const GateSet& enumerate_two_qubit_cliffords();

// One canonical representative (minimal key) per left coset under
// single-qubit pairs (u1 ⊗ u2)·U. Left factors cannot change the Schmidt
// spectrum of U·Θ, so the representatives suffice for the gate search.
GateSet reduce_by_local_equivalence(const GateSet& full);

// Cached gate set per mode (identity_only => just the identity tableau).
const GateSet& gate_set(GateSearchMode mode);

// Two-sided local-equivalence class of the gate's entangling part.
enum class InteractionClass { local_class, cnot_class, iswap_class, swap_class };
InteractionClass interaction_class(const CliffordTableau& t);

// Canonical total order used for gate-set sorting and entropy tie-breaking:
// interaction class first (local < cnot < iswap < swap), key second. Every
// gate U ties in entropy with SWAP·U on any state (swapping the two sites
// transposes the coefficient matrix, which keeps its singular values), so
// class-major order makes the site-order-preserving partner of each tied
// pair win. The identity sorts first overall.
uint32_t tableau_order_key(const CliffordTableau& t);

// A single-site Clifford rotation as the images of X and Z (1-site signed
// Paulis). Used for local-rotation searches and for building local tableaux.
class SingleQubitClifford {
  public:
    SingleQubitClifford();  // identity
    static SingleQubitClifford from_images(const PauliString& img_x, const PauliString& img_z);
    PauliString image_x() const;
    PauliString image_z() const;
    // Image of one letter: (letter', sign). Identity letter maps to itself.
    std::pair<Pauli, int> conj_letter(Pauli p) const;
    bool is_identity() const;
    uint32_t key() const;
    std::string encode() const;  // "X->+Z;Z->+X"
    bool operator==(const SingleQubitClifford& o) const { return key() == o.key(); }

  private:
    uint8_t lx_, sx_, lz_, sz_;  // letters (order codes) and sign bits
    friend CliffordTableau tensor_local(const SingleQubitClifford&, const SingleQubitClifford&);
};

// All 24 single-site Cliffords, sorted by key (identity first).
const std::vector<SingleQubitClifford>& enumerate_single_qubit_cliffords();

// (u ⊗ v) as a two-site tableau.
CliffordTableau tensor_local(const SingleQubitClifford& u, const SingleQubitClifford& v);

}  // namespace camps
