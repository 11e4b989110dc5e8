#include "camps/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace camps {

namespace {

long word_count(long n) { return (n + 63) / 64; }

// Quarter turns picked up when multiplying two literal letters on one site:
// letter(x1,z1) * letter(x2,z2) = i^t * letter(x1^x2, z1^z2) with
// t = x1 z1 + x2 z2 + 2 z1 x2 - x3 z3 (mod 4), x3 = x1^x2, z3 = z1^z2.
// Spot checks: X*Y = iZ, Y*X = -iZ, Z*X = iY, X*Z = -iY.
int64_t phase_turns(const std::vector<uint64_t>& xa, const std::vector<uint64_t>& za,
                    const std::vector<uint64_t>& xb, const std::vector<uint64_t>& zb) {
    int64_t t = 0;
    for (size_t w = 0; w < xa.size(); ++w) {
        t += std::popcount(xa[w] & za[w]);
        t += std::popcount(xb[w] & zb[w]);
        t += 2 * std::popcount(za[w] & xb[w]);
        t -= std::popcount((xa[w] ^ xb[w]) & (za[w] ^ zb[w]));
    }
    return t;
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    throw ArgumentError("bad Pauli enum value");
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default: throw ArgumentError(std::string("not a Pauli letter: '") + c + "'");
    }
}

int pauli_order_code(Pauli p) {
    switch (p) {
        case Pauli::I: return 0;
        case Pauli::X: return 1;
        case Pauli::Z: return 2;
        case Pauli::Y: return 3;
    }
    throw ArgumentError("bad Pauli enum value");
}

PauliString::PauliString(long n_sites) : n_(n_sites) {
    if (n_sites < 1) throw ArgumentError("PauliString needs at least one site");
    x_.assign(word_count(n_), 0);
    z_.assign(word_count(n_), 0);
}

PauliString::PauliString(const std::string& text) {
    size_t pos = 0;
    int q = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        q = 1;
        ++pos;
    }
    if (neg) q += 2;
    if (pos >= text.size()) throw FormatError("Pauli string has no letters: '" + text + "'");
    n_ = static_cast<long>(text.size() - pos);
    x_.assign(word_count(n_), 0);
    z_.assign(word_count(n_), 0);
    for (long j = 0; j < n_; ++j) set(j, pauli_from_char(text[pos + j]));
    set_quarter_turns(q);
}

PauliString PauliString::from_letters(const std::vector<Pauli>& letters, int quarter_turns) {
    PauliString s(static_cast<long>(letters.size()));
    for (size_t j = 0; j < letters.size(); ++j) s.set(static_cast<long>(j), letters[j]);
    s.set_quarter_turns(quarter_turns);
    return s;
}

Pauli PauliString::at(long site) const {
    if (site < 0 || site >= n_) throw ArgumentError("site out of range");
    int x = (x_[site / 64] >> (site % 64)) & 1;
    int z = (z_[site / 64] >> (site % 64)) & 1;
    if (x && z) return Pauli::Y;
    if (x) return Pauli::X;
    if (z) return Pauli::Z;
    return Pauli::I;
}

void PauliString::set(long site, Pauli p) {
    if (site < 0 || site >= n_) throw ArgumentError("site out of range");
    uint64_t bit = uint64_t(1) << (site % 64);
    uint64_t xv = (p == Pauli::X || p == Pauli::Y) ? bit : 0;
    uint64_t zv = (p == Pauli::Z || p == Pauli::Y) ? bit : 0;
    x_[site / 64] = (x_[site / 64] & ~bit) | xv;
    z_[site / 64] = (z_[site / 64] & ~bit) | zv;
}

cplx PauliString::phase() const {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[q_];
}

int PauliString::sign() const {
    if (q_ == 0) return 1;
    if (q_ == 2) return -1;
    throw ArgumentError("Pauli string phase is imaginary, not a sign");
}

bool PauliString::is_identity() const {
    for (auto w : x_)
        if (w) return false;
    for (auto w : z_)
        if (w) return false;
    return true;
}

long PauliString::weight() const {
    long w = 0;
    for (size_t k = 0; k < x_.size(); ++k) w += std::popcount(x_[k] | z_[k]);
    return w;
}

std::vector<long> PauliString::support() const {
    std::vector<long> s;
    for (long j = 0; j < n_; ++j)
        if (at(j) != Pauli::I) s.push_back(j);
    return s;
}

std::string PauliString::str() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string out = prefix[q_];
    for (long j = 0; j < n_; ++j) out += pauli_char(at(j));
    return out;
}

std::string PauliString::letters() const {
    if (q_ != 0) throw ArgumentError("letters() requires phase +1, have " + str());
    std::string out;
    for (long j = 0; j < n_; ++j) out += pauli_char(at(j));
    return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (n_ != other.n_) throw SizeError("commutes_with: site count mismatch");
    int64_t anti = 0;
    for (size_t w = 0; w < x_.size(); ++w) {
        anti += std::popcount(x_[w] & other.z_[w]);
        anti += std::popcount(z_[w] & other.x_[w]);
    }
    return anti % 2 == 0;
}

PauliString PauliString::restricted(long first, long count) const {
    if (first < 0 || count < 1 || first + count > n_)
        throw ArgumentError("restriction window out of range");
    PauliString out(count);
    for (long j = 0; j < count; ++j) out.set(j, at(first + j));
    out.set_quarter_turns(q_);
    return out;
}

PauliString PauliString::with_window(long first, const PauliString& window) const {
    if (first < 0 || first + window.n_sites() > n_)
        throw ArgumentError("window out of range");
    PauliString out = *this;
    for (long j = 0; j < window.n_sites(); ++j) out.set(first + j, window.at(j));
    out.set_quarter_turns(q_ + window.quarter_turns());
    return out;
}

bool PauliString::operator==(const PauliString& other) const {
    return n_ == other.n_ && q_ == other.q_ && x_ == other.x_ && z_ == other.z_;
}

bool PauliString::order_less(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) throw SizeError("order_less: site count mismatch");
    for (long j = 0; j < a.n_; ++j) {
        int ca = pauli_order_code(a.at(j));
        int cb = pauli_order_code(b.at(j));
        if (ca != cb) return ca < cb;
    }
    return a.q_ < b.q_;
}

PauliString pauli_multiply(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) throw SizeError("pauli_multiply: site count mismatch");
    PauliString out(a.n_);
    int64_t t = a.q_ + b.q_ + phase_turns(a.x_, a.z_, b.x_, b.z_);
    for (size_t w = 0; w < a.x_.size(); ++w) {
        out.x_[w] = a.x_[w] ^ b.x_[w];
        out.z_[w] = a.z_[w] ^ b.z_[w];
    }
    out.set_quarter_turns(static_cast<int>(((t % 4) + 4) % 4));
    return out;
}

bool pauli_commutes(const PauliString& a, const PauliString& b) { return a.commutes_with(b); }

PauliString tensor_product(const PauliString& a, const PauliString& b) {
    PauliString out(a.n_sites() + b.n_sites());
    for (long j = 0; j < a.n_sites(); ++j) out.set(j, a.at(j));
    for (long j = 0; j < b.n_sites(); ++j) out.set(a.n_sites() + j, b.at(j));
    out.set_quarter_turns(a.quarter_turns() + b.quarter_turns());
    return out;
}

PauliTerm::PauliTerm(double c, PauliString s) {
    if (!s.is_hermitian())
        throw ArgumentError("term string has imaginary phase, term would not be Hermitian: " +
                            s.str());
    coeff = c * s.sign();
    s.set_quarter_turns(0);
    str = std::move(s);
}

void PauliSum::add(double coeff, const PauliString& s) { add(PauliTerm(coeff, s)); }

void PauliSum::add(const PauliTerm& t) {
    if (t.str.n_sites() != n_) throw SizeError("term has wrong site count for this sum");
    terms_.push_back(t);
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
    if (n_ != other.n_) throw SizeError("sum: site count mismatch");
    PauliSum out = *this;
    for (const auto& t : other.terms_) out.terms_.push_back(t);
    return out;
}

PauliSum PauliSum::operator*(double scale) const {
    PauliSum out = *this;
    for (auto& t : out.terms_) t.coeff *= scale;
    return out;
}

bool PauliSum::operator==(const PauliSum& other) const {
    if (n_ != other.n_ || terms_.size() != other.terms_.size()) return false;
    for (size_t k = 0; k < terms_.size(); ++k) {
        if (!(terms_[k].str == other.terms_[k].str)) return false;
        if (terms_[k].coeff != other.terms_[k].coeff) return false;
    }
    return true;
}

PauliSum canonical_form(const PauliSum& h) {
    std::vector<PauliTerm> ts = h.terms();
    std::sort(ts.begin(), ts.end(), [](const PauliTerm& a, const PauliTerm& b) {
        return PauliString::order_less(a.str, b.str);
    });
    PauliSum out(h.n_sites());
    size_t k = 0;
    while (k < ts.size()) {
        double c = ts[k].coeff;
        size_t j = k + 1;
        while (j < ts.size() && ts[j].str == ts[k].str) {
            c += ts[j].coeff;
            ++j;
        }
        if (std::abs(c) >= kCoeffTolerance) out.add(PauliTerm(c, ts[k].str));
        k = j;
    }
    return out;
}

}  // namespace camps
