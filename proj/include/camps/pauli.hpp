#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "camps/errors.hpp"

namespace camps {

using cplx = std::complex<double>;

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// Site-wise ordering used everywhere a fixed Pauli order is needed (term
// sorting, tableau keys): I < X < Z < Y. Ranking Y last keeps the identity
// tableau the minimum of its local-equivalence class.
int pauli_order_code(Pauli p);

// An n-site Pauli operator: phase * (P_0 ⊗ P_1 ⊗ ... ⊗ P_{n-1}).
//
// Representation: one x-bit and one z-bit per site packed into uint64 words
// (site j lives in word j/64, bit j%64), plus a phase exponent q with the
// operator equal to i^q times the literal tensor product of letters
// (x,z) = (0,0) -> I, (1,0) -> X, (1,1) -> Y, (0,1) -> Z.
// Y is the literal matrix [[0,-i],[i,0]], so a string is Hermitian exactly
// when q is even (phase +1 or -1).
class PauliString {
  public:
    PauliString() = default;

    // Identity on n sites, phase +1.
    explicit PauliString(long n_sites);

    // Parse "XYZI" or "+XYZI" / "-XYZI" / "+iXYZI" / "-iXYZI".
    explicit PauliString(const std::string& text);

    static PauliString from_letters(const std::vector<Pauli>& letters, int quarter_turns = 0);

    long n_sites() const { return n_; }
    Pauli at(long site) const;
    void set(long site, Pauli p);

    // Phase as a quarter-turn exponent: the operator is i^q * literal letters.
    int quarter_turns() const { return q_; }
    void set_quarter_turns(int q) { q_ = static_cast<uint8_t>(((q % 4) + 4) % 4); }
    cplx phase() const;

    bool is_hermitian() const { return q_ % 2 == 0; }
    // +1 or -1; throws ArgumentError when the phase is imaginary.
    int sign() const;

    bool is_identity() const;  // ignores phase
    long weight() const;
    std::vector<long> support() const;

    // Letters with the phase prefix, e.g. "-iXYZI".
    std::string str() const;
    // Letters only; throws ArgumentError unless the phase is +1.
    std::string letters() const;

    bool commutes_with(const PauliString& other) const;

    // Restriction to sites [first, first+count): letters are copied, the
    // phase carried over unchanged.
    PauliString restricted(long first, long count) const;
    // Writes the letters of `window` (phase must be a sign, folded into the
    // returned string's quarter turns) into a copy of *this at `first`.
    PauliString with_window(long first, const PauliString& window) const;

    bool operator==(const PauliString& other) const;

    // Strict site-wise order: I < X < Z < Y per site, then phase. Used for
    // canonical term ordering.
    static bool order_less(const PauliString& a, const PauliString& b);

    const std::vector<uint64_t>& x_words() const { return x_; }
    const std::vector<uint64_t>& z_words() const { return z_; }

    friend PauliString pauli_multiply(const PauliString& a, const PauliString& b);

  private:
    long n_ = 0;
    std::vector<uint64_t> x_, z_;
    uint8_t q_ = 0;
};

// Operator product a*b with exact phase tracking.
PauliString pauli_multiply(const PauliString& a, const PauliString& b);

// True when a and b commute as operators.
bool pauli_commutes(const PauliString& a, const PauliString& b);

PauliString tensor_product(const PauliString& a, const PauliString& b);

// One Hermitian term of a Hamiltonian: coeff * string, string phase +1.
struct PauliTerm {
    double coeff = 0.0;
    PauliString str;

    PauliTerm() = default;
    // Folds a sign phase on `s` into the coefficient; throws ArgumentError on
    // an imaginary phase (the term would not be Hermitian).
    PauliTerm(double c, PauliString s);
};

// A real-coefficient sum of Pauli strings on a fixed number of sites.
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(long n_sites) : n_(n_sites) {
        if (n_sites < 1) throw ArgumentError("PauliSum needs at least one site");
    }

    long n_sites() const { return n_; }
    long n_terms() const { return static_cast<long>(terms_.size()); }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    void add(double coeff, const PauliString& s);
    void add(const PauliTerm& t);

    PauliSum operator+(const PauliSum& other) const;
    PauliSum operator*(double scale) const;

    bool operator==(const PauliSum& other) const;  // term-list equality

  private:
    long n_ = 0;
    std::vector<PauliTerm> terms_;
};

// Sorted (site-wise I < X < Z < Y, then sign), like terms merged, zero
// coefficients (|c| < 1e-12) dropped. Idempotent.
PauliSum canonical_form(const PauliSum& h);

inline constexpr double kCoeffTolerance = 1e-12;

}  // namespace camps
