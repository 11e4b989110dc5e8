#include "camps/dense.hpp"

#include <bit>

namespace camps {

namespace {

struct PackedString {
    uint64_t x = 0, z = 0;
    cplx amp;  // i^(q + #Y), the basis-independent part of the phase
};

// Site j occupies bit (L-1-j) so that site 0 is the most significant bit.
PackedString pack(const PauliString& s) {
    long L = s.n_sites();
    if (L > 14) throw SizeError("dense path limited to 14 sites");
    PackedString out;
    long n_y = 0;
    for (long j = 0; j < L; ++j) {
        Pauli p = s.at(j);
        uint64_t bit = uint64_t(1) << (L - 1 - j);
        if (p == Pauli::X || p == Pauli::Y) out.x |= bit;
        if (p == Pauli::Z || p == Pauli::Y) out.z |= bit;
        if (p == Pauli::Y) ++n_y;
    }
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    out.amp = table[(s.quarter_turns() + n_y) % 4];
    return out;
}

double parity_sign(uint64_t bits) { return std::popcount(bits) % 2 ? -1.0 : 1.0; }

}  // namespace

Eigen::MatrixXcd pauli_dense(const PauliString& s) {
    long L = s.n_sites();
    long dim = 1L << L;
    PackedString ps = pack(s);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (long col = 0; col < dim; ++col)
        m(col ^ ps.x, col) = ps.amp * parity_sign(uint64_t(col) & ps.z);
    return m;
}

Eigen::MatrixXcd to_dense(const PauliSum& h) {
    long L = h.n_sites();
    if (L > 14) throw SizeError("dense path limited to 14 sites");
    long dim = 1L << L;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : h.terms()) {
        PackedString ps = pack(t.str);
        cplx amp = t.coeff * ps.amp;
        for (long col = 0; col < dim; ++col)
            m(col ^ ps.x, col) += amp * parity_sign(uint64_t(col) & ps.z);
    }
    return m;
}

Eigen::VectorXcd apply_pauli_sum(const PauliSum& h, const Eigen::VectorXcd& v) {
    long L = h.n_sites();
    long dim = 1L << L;
    if (v.size() != dim) throw SizeError("state vector has wrong dimension");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (const auto& t : h.terms()) {
        PackedString ps = pack(t.str);
        cplx amp = t.coeff * ps.amp;
        for (long s = 0; s < dim; ++s)
            out(s ^ ps.x) += amp * parity_sign(uint64_t(s) & ps.z) * v(s);
    }
    return out;
}

EntanglementData dense_entanglement(const Eigen::VectorXcd& psi, long L, long cut) {
    if (cut < 1 || cut > L - 1) throw ArgumentError("cut out of range");
    if (psi.size() != (1L << L)) throw SizeError("state vector has wrong dimension");
    if (std::abs(psi.norm() - 1.0) > 1e-8) throw ArgumentError("state is not normalized");
    long rows = 1L << cut;
    long cols = 1L << (L - cut);
    // Site 0 is the most significant bit, so the first `cut` sites form the
    // row index of a row-major view.
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        psi.data(), rows, cols);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    std::vector<double> probs;
    for (long k = 0; k < svd.singularValues().size(); ++k) {
        double s = svd.singularValues()(k);
        probs.push_back(s * s);
    }
    return make_entanglement_data(cut, std::move(probs));
}

}  // namespace camps
