#pragma once

#include <Eigen/Dense>
#include <complex>

#include "camps/errors.hpp"
#include "camps/pauli.hpp"

namespace camps {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Site tensor with indices (left bond a, physical s, right bond b), stored
// column-major as a (2*dl) x dr matrix with row index a + dl*s. The flat
// layout is therefore a fastest, then s, then b, and the alternative
// grouping (dl) x (2*dr) with column index s + 2*b is a plain Map of the
// same buffer.
template <typename S>
struct SiteTensor {
    Mat<S> m;
    long dl = 1, dr = 1;

    SiteTensor() : m(Mat<S>::Zero(2, 1)) {}
    SiteTensor(long dl_, long dr_) : m(Mat<S>::Zero(2 * dl_, dr_)), dl(dl_), dr(dr_) {}

    Eigen::Map<const Mat<S>> right_view() const {
        return Eigen::Map<const Mat<S>>(m.data(), dl, 2 * dr);
    }
    Eigen::Map<Mat<S>> right_view() { return Eigen::Map<Mat<S>>(m.data(), dl, 2 * dr); }
    S at(long a, long s, long b) const { return m(a + dl * s, b); }
};

// Two-site tensor (a, s1, s2, b) stored as (2*dl) x (2*dr): row a + dl*s1,
// column s2 + 2*b. Same fastest-to-slowest flat order as two fused
// SiteTensors, so theta = M_j.m * M_{j+1}.right_view() lands directly here.
template <typename S>
struct TwoSite {
    Mat<S> m;
    long dl = 1, dr = 1;

    TwoSite() : m(Mat<S>::Zero(2, 2)) {}
    TwoSite(long dl_, long dr_) : m(Mat<S>::Zero(2 * dl_, 2 * dr_)), dl(dl_), dr(dr_) {}

    long size() const { return 4 * dl * dr; }
    S at(long a, long s1, long s2, long b) const { return m(a + dl * s1, s2 + 2 * b); }
    double norm() const { return m.norm(); }
};

namespace detail {

// One Pauli letter as an action on a physical index: output index and the
// scalar factor per input value. Real instantiations replace Y by the real
// antisymmetric matrix i*Y (callers fold the compensating (-i)^k phases
// into term coefficients, which requires an even Y count per term).
template <typename S>
struct LetterAction {
    int out[2];
    S factor[2];
};

template <typename S>
inline LetterAction<S> letter_action(Pauli p) {
    LetterAction<S> act;
    switch (p) {
        case Pauli::I:
            act = {{0, 1}, {S(1), S(1)}};
            break;
        case Pauli::X:
            act = {{1, 0}, {S(1), S(1)}};
            break;
        case Pauli::Z:
            act = {{0, 1}, {S(1), S(-1)}};
            break;
        case Pauli::Y:
            if constexpr (std::is_same_v<S, cplx>) {
                act = {{1, 0}, {cplx(0, 1), cplx(0, -1)}};
            } else {
                act = {{1, 0}, {S(-1), S(1)}};  // i*Y
            }
            break;
    }
    return act;
}

}  // namespace detail

// Applies (letter on s) to a site tensor's physical index.
template <typename S>
inline void apply_letter(const SiteTensor<S>& in, Pauli p, SiteTensor<S>& out) {
    out.dl = in.dl;
    out.dr = in.dr;
    out.m.resize(in.m.rows(), in.m.cols());
    auto act = detail::letter_action<S>(p);
    for (int s = 0; s < 2; ++s)
        out.m.middleRows(in.dl * act.out[s], in.dl) =
            act.factor[s] * in.m.middleRows(in.dl * s, in.dl);
}

// Applies (letter p1 on s1) ⊗ (letter p2 on s2) to a two-site tensor.
template <typename S>
inline void apply_letter_pair(const TwoSite<S>& in, Pauli p1, Pauli p2, TwoSite<S>& out) {
    out.dl = in.dl;
    out.dr = in.dr;
    out.m.resize(in.m.rows(), in.m.cols());
    auto a1 = detail::letter_action<S>(p1);
    auto a2 = detail::letter_action<S>(p2);
    const long dl = in.dl, dr = in.dr;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            const S* ip = in.m.data() + dl * s1 + 2 * dl * s2;
            S* op = out.m.data() + dl * a1.out[s1] + 2 * dl * a2.out[s2];
            S f = a1.factor[s1] * a2.factor[s2];
            for (long b = 0; b < dr; ++b)
                Eigen::Map<Vec<S>>(op + 4 * dl * b, dl) =
                    f * Eigen::Map<const Vec<S>>(ip + 4 * dl * b, dl);
        }
}

}  // namespace camps
