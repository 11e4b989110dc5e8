#pragma once

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <type_traits>
#include <vector>

#include "camps/errors.hpp"
#include "camps/lanczos.hpp"
#include "camps/pauli.hpp"
#include "camps/tensor.hpp"

namespace camps::engine {

// One product term coeff * (letter_j over the support window). The window is
// trimmed: letters at both ends are non-identity (interior identities stay).
struct Term {
    double coeff = 0.0;
    long first = 0;
    std::vector<Pauli> letters;

    long last() const { return first + long(letters.size()) - 1; }
    Pauli at(long site) const {
        return (site < first || site > last()) ? Pauli::I : letters[site - first];
    }
};

// A term's restriction to a half chain, as ordered (site, letter) pairs of
// its non-identity letters there. Environment caches are keyed by these, so
// terms sharing a prefix or suffix share one cached contraction, and a gate
// acting inside the other half never touches the key.
using Signature = std::vector<std::pair<long, Pauli>>;

inline Signature prefix_of(const Term& t, long cut) {
    Signature sig;
    for (long j = t.first; j <= t.last() && j < cut; ++j)
        if (t.letters[j - t.first] != Pauli::I) sig.emplace_back(j, t.letters[j - t.first]);
    return sig;
}

inline Signature suffix_of(const Term& t, long cut) {
    Signature sig;
    for (long j = std::max(t.first, cut); j <= t.last(); ++j)
        if (t.letters[j - t.first] != Pauli::I) sig.emplace_back(j, t.letters[j - t.first]);
    return sig;
}

// Kick amplitude for the early sweeps. Sweeping can reach a self-consistent
// fixed point that solves every local two-site problem exactly without being
// a global eigenstate (a mean-field trap, typical when starting from product
// states). A small deterministic perturbation of the split tensor dislodges
// it; the amplitude decays to zero so late sweeps optimize the untouched
// functional.
inline double sweep_noise(long sweep) {
    return sweep < 4 ? 1e-3 * std::pow(10.0, -double(sweep)) : 0.0;
}

// Two-site DMRG engine over an explicit term list. Block Hamiltonians and
// per-signature environments are cached per cut; a left-to-right half sweep
// consumes the right caches built by the previous right-to-left pass and
// rebuilds the left ones as it moves (and vice versa). Conjugating terms at
// the active bond keeps every cache ahead of the sweep front valid: those
// caches only contract letters on sites the gate cannot reach.
template <typename S>
class Engine {
  public:
    Engine(long n_sites, long max_bond, double cutoff, double eig_tol, long eig_max_matvecs)
        : L_(n_sites),
          d_max_(max_bond),
          cutoff_(cutoff),
          eig_tol_(eig_tol),
          eig_max_matvecs_(eig_max_matvecs) {
        if (L_ < 2) throw ArgumentError("need at least two sites");
        m_.resize(L_);
        hl_.resize(L_ + 1);
        hr_.resize(L_ + 1);
        lenv_.resize(L_ + 1);
        renv_.resize(L_ + 1);
    }

    // Replaces the term list. Cached environments stay: they are keyed by
    // letter signatures, which a two-site conjugation elsewhere cannot alter.
    void set_terms(const PauliSum& h) {
        if (h.n_sites() != L_) throw ArgumentError("term list size mismatch");
        terms_.clear();
        constant_ = 0.0;
        for (const auto& pt : h.terms()) {
            auto supp = pt.str.support();
            if (supp.empty()) {
                constant_ += pt.coeff;
                continue;
            }
            Term t;
            t.coeff = pt.coeff;
            t.first = supp.front();
            t.letters.resize(supp.back() - supp.front() + 1, Pauli::I);
            long n_y = 0;
            for (long j : supp) {
                t.letters[j - t.first] = pt.str.at(j);
                if (pt.str.at(j) == Pauli::Y) ++n_y;
            }
            if constexpr (!std::is_same_v<S, cplx>) {
                if (n_y % 2 != 0)
                    throw ArgumentError("real engine needs an even Y count per term");
                if (n_y % 4 == 2) t.coeff = -t.coeff;  // (-i)^2 per replaced Y pair
            }
            terms_.push_back(std::move(t));
        }
    }

    void init_random_product(uint64_t seed) {
        uint64_t s = seed * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL;
        auto next_unit = [&s]() {
            uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            z ^= z >> 31;
            return double(z >> 11) * 0x1.0p-53;
        };
        for (long j = 0; j < L_; ++j) {
            Vec<S> amp(2);
            for (int k = 0; k < 2; ++k) {
                if constexpr (std::is_same_v<S, cplx>)
                    amp(k) = cplx(2.0 * next_unit() - 1.0, 2.0 * next_unit() - 1.0);
                else
                    amp(k) = S(2.0 * next_unit() - 1.0);
            }
            amp /= amp.norm();
            m_[j] = SiteTensor<S>(1, 1);
            m_[j].m(0, 0) = amp(0);
            m_[j].m(1, 0) = amp(1);
        }
    }

    // Right-canonicalizes everything and builds the right caches for every
    // cut, leaving the engine ready for a left-to-right sweep at bond 0.
    void prepare() {
        for (long j = L_ - 1; j > 0; --j) {
            auto& t = m_[j];
            Eigen::HouseholderQR<Mat<S>> qr(t.right_view().adjoint().eval());
            const long k = std::min<long>(t.dl, 2 * t.dr);
            Mat<S> q = qr.householderQ() * Mat<S>::Identity(2 * t.dr, k);
            Mat<S> r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
            SiteTensor<S> nt(k, t.dr);
            nt.right_view() = q.adjoint();
            t = std::move(nt);
            m_[j - 1].m = (m_[j - 1].m * r.adjoint()).eval();
            m_[j - 1].dr = k;
        }
        double nrm = m_[0].m.norm();
        if (nrm <= 0) throw ArgumentError("cannot prepare a zero state");
        m_[0].m /= nrm;

        hl_[0] = Mat<S>::Zero(1, 1);
        lenv_[0].clear();
        hr_[L_] = Mat<S>::Zero(1, 1);
        renv_[L_].clear();
        noise_tick_ = 0;
        for (long c = L_ - 1; c >= 1; --c) advance_right_caches(c);
    }

    struct EigOut {
        TwoSite<S> theta;
        double energy = 0.0;
        bool converged = false;
        long matvecs = 0;
    };

    EigOut eigensolve_bond(long j) {
        TwoSite<S> theta0 = merge_bond(j);
        Vec<S> v0 = Eigen::Map<Vec<S>>(theta0.m.data(), theta0.size());
        auto ctx = bond_context(j);
        LanczosOptions opt;
        opt.tol = eig_tol_;
        opt.max_matvecs = eig_max_matvecs_;
        opt.krylov_dim = 40;
        auto res = lowest_eigenpair<S>(
            [&ctx, this](const Vec<S>& v) { return apply_effective(ctx, v); }, v0, opt);
        EigOut out;
        out.energy = res.eigenvalue;
        out.converged = res.converged;
        out.matvecs = res.matvecs;
        out.theta.dl = theta0.dl;
        out.theta.dr = theta0.dr;
        out.theta.m =
            Eigen::Map<Mat<S>>(res.eigenvector.data(), 2 * theta0.dl, 2 * theta0.dr);
        return out;
    }

    // Rayleigh quotient of the current two-site tensor at the bond.
    double rayleigh(long j) {
        TwoSite<S> theta = merge_bond(j);
        auto ctx = bond_context(j);
        Eigen::Map<const Vec<S>> v(theta.m.data(), theta.size());
        Vec<S> hv = apply_effective(ctx, v);
        double nrm2 = v.squaredNorm();
        return std::real(cplx(v.dot(hv))) / nrm2;
    }

    // Truncates theta into site tensors and advances the left caches past
    // site j (sweep moving right). Returns the discarded weight.
    double update_bond_lr(long j, const TwoSite<S>& theta) {
        double discarded = split(j, theta, /*center_right=*/true);
        advance_left_caches(j + 1);
        return discarded;
    }

    // Mirror image for a sweep moving left: builds the right caches at j+1.
    double update_bond_rl(long j, const TwoSite<S>& theta) {
        double discarded = split(j, theta, /*center_right=*/false);
        advance_right_caches(j + 1);
        return discarded;
    }

    // After a gate on (j, j+1) the caller conjugated its Pauli sum; mirror
    // the change here. Caches are untouched by construction.
    void replace_terms(const PauliSum& h) { set_terms(h); }

    // Perturbation added to two-site tensors before they are split, relative
    // to the tensor norm. Drivers set this per sweep (see sweep_noise).
    void set_noise(double amplitude) { noise_ = amplitude; }

    const std::vector<SiteTensor<S>>& tensors() const { return m_; }
    long n_sites() const { return L_; }
    double constant_term() const { return constant_; }

    TwoSite<S> merge_bond(long j) const {
        if (j < 0 || j + 1 >= L_) throw ArgumentError("bond out of range");
        TwoSite<S> theta(m_[j].dl, m_[j + 1].dr);
        theta.m = m_[j].m * m_[j + 1].right_view();
        return theta;
    }

    // Fresh (cache-free) rebuild of one cut's caches; used by tests to prove
    // the incremental caches stay exact across gate conjugations.
    void rebuild_right_caches_from_scratch(long cut) {
        hr_[L_] = Mat<S>::Zero(1, 1);
        renv_[L_].clear();
        for (long c = L_ - 1; c >= cut; --c) advance_right_caches(c);
    }
    const Mat<S>& right_block_h(long cut) const { return hr_[cut]; }
    const std::map<Signature, Mat<S>>& right_envs(long cut) const { return renv_[cut]; }

  private:
    struct Crossing {
        const Mat<S>* a = nullptr;  // left env or null for identity
        const Mat<S>* b = nullptr;  // right env or null
        Pauli l1 = Pauli::I, l2 = Pauli::I;
        double coeff = 0.0;
    };
    struct BondContext {
        long j, dl, dr;
        const Mat<S>* hl;
        const Mat<S>* hr;
        std::vector<Crossing> cross;
        double constant;
    };

    BondContext bond_context(long j) {
        BondContext ctx;
        ctx.j = j;
        ctx.dl = m_[j].dl;
        ctx.dr = m_[j + 1].dr;
        ctx.hl = &hl_[j];
        ctx.hr = &hr_[j + 2];
        ctx.constant = constant_;
        for (const auto& t : terms_) {
            if (t.last() < j || t.first > j + 1) continue;
            Crossing c;
            c.coeff = t.coeff;
            c.l1 = t.at(j);
            c.l2 = t.at(j + 1);
            if (t.first < j) c.a = &lenv_[j].at(prefix_of(t, j));
            if (t.last() > j + 1) c.b = &renv_[j + 2].at(suffix_of(t, j + 2));
            ctx.cross.push_back(c);
        }
        return ctx;
    }

    Vec<S> apply_effective(const BondContext& ctx, const Vec<S>& v) const {
        const long dl = ctx.dl, dr = ctx.dr;
        TwoSite<S> theta(dl, dr);
        theta.m = Eigen::Map<const Mat<S>>(v.data(), 2 * dl, 2 * dr);
        TwoSite<S> out(dl, dr);
        out.m.setZero();

        auto wide = [dl, dr](const Mat<S>& m) {  // (dl, 4*dr) view
            return Eigen::Map<const Mat<S>>(m.data(), dl, 4 * dr);
        };
        auto tall = [dl, dr](const Mat<S>& m) {  // (4*dl, dr) view
            return Eigen::Map<const Mat<S>>(m.data(), 4 * dl, dr);
        };

        Eigen::Map<Mat<S>>(out.m.data(), dl, 4 * dr) += (*ctx.hl) * wide(theta.m);
        Eigen::Map<Mat<S>>(out.m.data(), 4 * dl, dr) +=
            tall(theta.m) * ctx.hr->transpose();
        if (ctx.constant != 0.0) out.m += S(ctx.constant) * theta.m;

        TwoSite<S> tmp(dl, dr);
        Mat<S> buf(2 * dl, 2 * dr);
        for (const auto& c : ctx.cross) {
            const Mat<S>* cur = &theta.m;
            if (c.l1 != Pauli::I || c.l2 != Pauli::I) {
                apply_letter_pair(theta, c.l1, c.l2, tmp);
                cur = &tmp.m;
            }
            if (c.a) {
                Eigen::Map<Mat<S>>(buf.data(), dl, 4 * dr) = (*c.a) * wide(*cur);
                cur = &buf;
            }
            if (c.b) {
                if (cur != &buf) buf = *cur;
                Eigen::Map<Mat<S>>(buf.data(), 4 * dl, dr) =
                    (tall(buf) * c.b->transpose()).eval();
                cur = &buf;
            }
            out.m += S(c.coeff) * (*cur);
        }
        return Eigen::Map<Vec<S>>(out.m.data(), out.m.size());
    }

    double split(long j, const TwoSite<S>& theta, bool center_right) {
        double total = theta.m.squaredNorm();
        if (!(total > 0)) throw DegenerateInputError("zero two-site tensor");
        const Mat<S>* src = &theta.m;
        Mat<S> kicked;
        if (noise_ > 0.0) {
            kicked = theta.m +
                     (noise_ * std::sqrt(total)) * unit_noise(theta.m.rows(), theta.m.cols(), j);
            total = kicked.squaredNorm();
            src = &kicked;
        }
        Eigen::BDCSVD<Mat<S>> svd(*src, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& s = svd.singularValues();
        long keep = 0;
        while (keep < s.size() && keep < d_max_ && s(keep) >= cutoff_ * s(0)) ++keep;
        if (keep == 0) keep = 1;
        const double kept = s.head(keep).squaredNorm();
        Eigen::VectorXd sk = s.head(keep) / std::sqrt(kept);

        SiteTensor<S> left(theta.dl, keep);
        left.m = svd.matrixU().leftCols(keep);
        SiteTensor<S> right(keep, theta.dr);
        right.right_view() = svd.matrixV().leftCols(keep).adjoint();
        if (center_right)
            right.right_view() = (sk.template cast<S>().asDiagonal() * right.right_view()).eval();
        else
            left.m = (left.m * sk.template cast<S>().asDiagonal()).eval();
        m_[j] = std::move(left);
        m_[j + 1] = std::move(right);
        return total - kept;
    }

    // hl_[c+1]/lenv_[c+1] from hl_[c]/lenv_[c] and the (left-isometric) m_[c].
    void advance_left_caches(long cut) {
        const long j = cut - 1;
        const auto& t = m_[j];
        Mat<S> h = lift_left_env(&hl_[j], Pauli::I, t);
        for (const auto& term : terms_) {
            if (term.last() != j) continue;
            const Mat<S>* a = term.first < j ? &lenv_[j].at(prefix_of(term, j)) : nullptr;
            h += S(term.coeff) * lift_left_env(a, term.at(j), t);
        }
        hl_[cut] = std::move(h);
        lenv_[cut].clear();
        for (const auto& term : terms_) {
            if (!(term.first < cut && cut <= term.last())) continue;
            Signature sig = prefix_of(term, cut);
            if (lenv_[cut].count(sig)) continue;
            const Mat<S>* a = term.first < j ? &lenv_[j].at(prefix_of(term, j)) : nullptr;
            lenv_[cut].emplace(std::move(sig), lift_left_env(a, term.at(j), t));
        }
    }

    void advance_right_caches(long cut) {
        const long j = cut;  // site entering the right block
        const auto& t = m_[j];
        Mat<S> h = lift_right_env(&hr_[j + 1], Pauli::I, t);
        for (const auto& term : terms_) {
            if (term.first != j) continue;
            const Mat<S>* b = term.last() > j ? &renv_[j + 1].at(suffix_of(term, j + 1)) : nullptr;
            h += S(term.coeff) * lift_right_env(b, term.at(j), t);
        }
        hr_[cut] = std::move(h);
        renv_[cut].clear();
        for (const auto& term : terms_) {
            if (!(term.first < cut && cut <= term.last())) continue;
            Signature sig = suffix_of(term, cut);
            if (renv_[cut].count(sig)) continue;
            const Mat<S>* b = term.last() > j ? &renv_[j + 1].at(suffix_of(term, j + 1)) : nullptr;
            renv_[cut].emplace(std::move(sig), lift_right_env(b, term.at(j), t));
        }
    }

    // M† (A ⊗ letter) M with A acting on the left bond (null A = identity).
    Mat<S> lift_left_env(const Mat<S>* a, Pauli letter, const SiteTensor<S>& t) const {
        SiteTensor<S> y;
        apply_letter(t, letter, y);
        if (a) {
            SiteTensor<S> z(t.dl, t.dr);
            z.right_view() = (*a) * y.right_view();
            return t.m.adjoint() * z.m;
        }
        return t.m.adjoint() * y.m;
    }

    // (letter ⊗ B) sandwiched around t, acting on its left bond index:
    // result(a', a) = sum over (s', b') of conj(t(a', s', b')) z(a, s', b')
    // with z = letter . t . B^T (null B = identity).
    Mat<S> lift_right_env(const Mat<S>* b, Pauli letter, const SiteTensor<S>& t) const {
        SiteTensor<S> y;
        apply_letter(t, letter, y);
        Mat<S> z = b ? Mat<S>(y.m * b->transpose()) : std::move(y.m);
        Eigen::Map<const Mat<S>> zv(z.data(), t.dl, 2 * t.dr);
        return t.right_view().conjugate() * zv.transpose();
    }

    // Unit-norm pseudo-random tensor, keyed by a per-run tick and the bond so
    // identical runs stay bitwise identical.
    Mat<S> unit_noise(long rows, long cols, long j) {
        uint64_t x = (noise_tick_++ + 1) * 0x9e3779b97f4a7c15ULL ^
                     uint64_t(j + 1) * 0xbf58476d1ce4e5b9ULL;
        auto sym = [&x]() {
            uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            z ^= z >> 31;
            return double(z >> 11) * 0x1.0p-52 - 1.0;
        };
        Mat<S> r(rows, cols);
        for (long c = 0; c < cols; ++c)
            for (long rr = 0; rr < rows; ++rr) {
                if constexpr (std::is_same_v<S, cplx>)
                    r(rr, c) = cplx(sym(), sym());
                else
                    r(rr, c) = S(sym());
            }
        r /= r.norm();
        return r;
    }

    long L_;
    long d_max_;
    double cutoff_;
    double eig_tol_;
    long eig_max_matvecs_;
    double noise_ = 0.0;
    uint64_t noise_tick_ = 0;
    std::vector<Term> terms_;
    double constant_ = 0.0;
    std::vector<SiteTensor<S>> m_;
    std::vector<Mat<S>> hl_, hr_;
    std::vector<std::map<Signature, Mat<S>>> lenv_, renv_;
};

}  // namespace camps::engine
