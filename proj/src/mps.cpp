#include "camps/mps.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include "camps/errors.hpp"
#include "camps/lanczos.hpp"

namespace camps {

namespace {

uint64_t splitmix(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_double(uint64_t& s) { return double(splitmix(s) >> 11) * 0x1.0p-53; }

// Thin QR helpers. Left: A (rows x cols) = Q R with Q (rows x k) isometric.
void thin_qr(const Eigen::MatrixXcd& a, Eigen::MatrixXcd& q, Eigen::MatrixXcd& r) {
    const long k = std::min(a.rows(), a.cols());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    q = qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), k);
    r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

}  // namespace

MpsState random_product_state(long n_sites, uint64_t seed) {
    if (n_sites < 2) throw ArgumentError("need at least two sites");
    MpsState mps;
    mps.n_sites = n_sites;
    mps.max_bond = 1;
    mps.center = 0;
    mps.tensors.resize(n_sites);
    uint64_t s = seed * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL;
    for (long j = 0; j < n_sites; ++j) {
        Eigen::Vector2cd amp;
        for (int k = 0; k < 2; ++k)
            amp(k) = cplx(2.0 * unit_double(s) - 1.0, 2.0 * unit_double(s) - 1.0);
        amp /= amp.norm();
        mps.tensors[j] = SiteTensor<cplx>(1, 1);
        mps.tensors[j].m(0, 0) = amp(0);
        mps.tensors[j].m(1, 0) = amp(1);
    }
    return mps;
}

void canonicalize(MpsState& mps, long center) {
    if (center < 0 || center >= mps.n_sites)
        throw ArgumentError("canonical center out of range");
    // Left-to-right QR up to the center.
    for (long j = 0; j < center; ++j) {
        auto& t = mps.tensors[j];
        Eigen::MatrixXcd q, r;
        thin_qr(t.m, q, r);
        const long k = q.cols();
        t.m = q;
        t.dr = k;
        auto& u = mps.tensors[j + 1];
        Eigen::MatrixXcd merged = r * u.right_view();  // (k, 2*dr')
        SiteTensor<cplx> nu(k, u.dr);
        nu.right_view() = merged;
        u = std::move(nu);
    }
    // Right-to-left up to the center.
    for (long j = mps.n_sites - 1; j > center; --j) {
        auto& t = mps.tensors[j];
        Eigen::MatrixXcd q, r;
        thin_qr(t.right_view().adjoint(), q, r);  // right_view^H = Q R
        const long k = q.cols();
        SiteTensor<cplx> nt(k, t.dr);
        nt.right_view() = q.adjoint();
        t = std::move(nt);
        auto& u = mps.tensors[j - 1];
        u.m = (u.m * r.adjoint()).eval();  // (2*dl', dl) x (dl, k)
        u.dr = k;
    }
    mps.center = center;
}

bool is_left_isometry(const SiteTensor<cplx>& t, double tol) {
    Eigen::MatrixXcd g = t.m.adjoint() * t.m;
    return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).norm() < tol;
}

bool is_right_isometry(const SiteTensor<cplx>& t, double tol) {
    auto v = t.right_view();
    Eigen::MatrixXcd g = v * v.adjoint();
    return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).norm() < tol;
}

Eigen::VectorXcd mps_to_dense(const MpsState& mps) {
    if (mps.n_sites > 14) throw SizeError("dense reconstruction limited to 14 sites");
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Ones(1, 1);
    for (long j = 0; j < mps.n_sites; ++j) {
        const auto& t = mps.tensors[j];
        Eigen::MatrixXcd next(2 * block.rows(), t.dr);
        for (int s = 0; s < 2; ++s)
            next(Eigen::seqN(s, block.rows(), 2), Eigen::all) =
                block * t.m.middleRows(t.dl * s, t.dl);
        block = std::move(next);
    }
    return block.col(0);
}

double expectation(const MpsState& mps, const MpoOperator& mpo) {
    if (mps.n_sites != mpo.n_sites) throw ArgumentError("operator/state size mismatch");
    std::vector<Eigen::MatrixXcd> env{Eigen::MatrixXcd::Ones(1, 1)};
    for (long j = 0; j < mps.n_sites; ++j) {
        const auto& t = mps.tensors[j];
        const auto& w = mpo.sites[j];
        if (long(env.size()) != w.wl) throw ArgumentError("operator bond structure mismatch");
        std::vector<Eigen::MatrixXcd> next(w.wr, Eigen::MatrixXcd::Zero(t.dr, t.dr));
        for (long m = 0; m < w.wl; ++m) {
            if (env[m].size() == 0) continue;
            Eigen::MatrixXcd g[2] = {env[m] * t.m.middleRows(0, t.dl),
                                     env[m] * t.m.middleRows(t.dl, t.dl)};
            for (long n = 0; n < w.wr; ++n) {
                const Eigen::Matrix2cd& op = w.at(m, n);
                if (op.isZero(0)) continue;
                for (int sp = 0; sp < 2; ++sp)
                    for (int s = 0; s < 2; ++s)
                        if (op(sp, s) != cplx(0, 0))
                            next[n] += op(sp, s) * t.m.middleRows(t.dl * sp, t.dl).adjoint() * g[s];
            }
        }
        env = std::move(next);
    }
    return env[0](0, 0).real();
}

SvdTruncation svd_truncate(const TwoSiteTensor& theta, long max_bond, double cutoff) {
    if (max_bond < 1) throw ArgumentError("max bond must be positive");
    const double total = theta.m.squaredNorm();
    if (!(total > 0.0)) throw DegenerateInputError("cannot split an all-zero tensor");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(theta.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    long keep = 0;
    while (keep < s.size() && keep < max_bond && s(keep) >= cutoff * s(0)) ++keep;
    if (keep == 0) keep = 1;
    const double kept_weight = s.head(keep).squaredNorm();

    SvdTruncation out;
    out.discarded_weight = total - kept_weight;
    out.schmidt = s.head(keep) / std::sqrt(kept_weight);
    out.left.dl = theta.dl;
    out.left.dr = keep;
    out.left.m = svd.matrixU().leftCols(keep);
    out.right.dl = keep;
    out.right.dr = theta.dr;
    out.right.m.resize(2 * keep, theta.dr);
    out.right.right_view() = svd.matrixV().leftCols(keep).adjoint();
    return out;
}

std::vector<EntanglementData> entanglement_profile(const MpsState& mps) {
    MpsState work = mps;
    canonicalize(work, 0);
    std::vector<EntanglementData> profile;
    profile.reserve(work.n_sites - 1);
    for (long j = 0; j + 1 < work.n_sites; ++j) {
        auto& t = work.tensors[j];
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(t.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& s = svd.singularValues();
        std::vector<double> probs(s.size());
        double total = s.squaredNorm();
        if (std::abs(total - 1.0) > 1e-8)
            throw ArgumentError("entanglement profile needs a normalized state");
        for (long k = 0; k < s.size(); ++k) probs[k] = s(k) * s(k) / total;
        profile.push_back(make_entanglement_data(j + 1, probs));

        const long k = s.size();
        t.m = svd.matrixU();
        t.dr = k;
        auto& u = work.tensors[j + 1];
        Eigen::MatrixXcd carry = s.asDiagonal() * svd.matrixV().adjoint().eval();
        Eigen::MatrixXcd merged = carry * u.right_view();
        SiteTensor<cplx> nu(k, u.dr);
        nu.right_view() = merged;
        u = std::move(nu);
    }
    return profile;
}

namespace {

// Effective two-site operator application for the generic MPO path.
struct EffectiveMpo {
    const MpoOperator::Site* w1;
    const MpoOperator::Site* w2;
    std::vector<Eigen::MatrixXcd> lenv;  // per left MPO bond, (dl, dl)
    std::vector<Eigen::MatrixXcd> renv;  // per right MPO bond, (dr, dr)
    long dl, dr;

    Eigen::VectorXcd operator()(const Eigen::VectorXcd& v) const {
        const long rows = 2 * dl, cols = 2 * dr;
        Eigen::Map<const Eigen::MatrixXcd> theta(v.data(), rows, cols);
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, cols);
        const long mid = w1->wr;
        for (long m = 0; m < long(lenv.size()); ++m) {
            Eigen::MatrixXcd x(rows, cols);  // lenv applied to the a index
            for (int s1 = 0; s1 < 2; ++s1)
                x.middleRows(dl * s1, dl) = lenv[m] * theta.middleRows(dl * s1, dl);
            for (long k = 0; k < mid; ++k) {
                const Eigen::Matrix2cd& a = w1->at(m, k);
                if (a.isZero(0)) continue;
                Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(rows, cols);
                for (int sp = 0; sp < 2; ++sp)
                    for (int s = 0; s < 2; ++s)
                        if (a(sp, s) != cplx(0, 0))
                            y.middleRows(dl * sp, dl) += a(sp, s) * x.middleRows(dl * s, dl);
                for (long n = 0; n < long(renv.size()); ++n) {
                    const Eigen::Matrix2cd& b = w2->at(k, n);
                    if (b.isZero(0)) continue;
                    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(rows, cols);
                    for (int sp = 0; sp < 2; ++sp)
                        for (int s = 0; s < 2; ++s)
                            if (b(sp, s) != cplx(0, 0))
                                z(Eigen::all, Eigen::seqN(sp, dr, 2)) +=
                                    b(sp, s) * y(Eigen::all, Eigen::seqN(s, dr, 2));
                    // contract the pure right-bond index: columns of the
                    // (4*dl) x dr remap are b alone
                    Eigen::Map<Eigen::MatrixXcd> ot(out.data(), 4 * dl, dr);
                    Eigen::Map<const Eigen::MatrixXcd> zt(z.data(), 4 * dl, dr);
                    ot += zt * renv[n].transpose();
                }
            }
        }
        return Eigen::Map<Eigen::VectorXcd>(out.data(), out.size());
    }
};

}  // namespace

EigensolveResult two_site_eigensolve(const MpsState& mps, const MpoOperator& mpo, long bond,
                                     double tol) {
    if (mps.n_sites != mpo.n_sites) throw ArgumentError("operator/state size mismatch");
    if (bond < 0 || bond + 1 >= mps.n_sites) throw ArgumentError("bond out of range");
    if (mps.center != bond && mps.center != bond + 1)
        throw ArgumentError("canonical center must sit on the updated bond");

    EffectiveMpo eff;
    eff.w1 = &mpo.sites[bond];
    eff.w2 = &mpo.sites[bond + 1];
    eff.dl = mps.tensors[bond].dl;
    eff.dr = mps.tensors[bond + 1].dr;

    // Left environments over sites [0, bond).
    eff.lenv.assign(1, Eigen::MatrixXcd::Ones(1, 1));
    for (long j = 0; j < bond; ++j) {
        const auto& t = mps.tensors[j];
        const auto& w = mpo.sites[j];
        std::vector<Eigen::MatrixXcd> next(w.wr, Eigen::MatrixXcd::Zero(t.dr, t.dr));
        for (long m = 0; m < w.wl; ++m) {
            Eigen::MatrixXcd g[2] = {eff.lenv[m] * t.m.middleRows(0, t.dl),
                                     eff.lenv[m] * t.m.middleRows(t.dl, t.dl)};
            for (long n = 0; n < w.wr; ++n) {
                const Eigen::Matrix2cd& op = w.at(m, n);
                if (op.isZero(0)) continue;
                for (int sp = 0; sp < 2; ++sp)
                    for (int s = 0; s < 2; ++s)
                        if (op(sp, s) != cplx(0, 0))
                            next[n] += op(sp, s) * t.m.middleRows(t.dl * sp, t.dl).adjoint() * g[s];
            }
        }
        eff.lenv = std::move(next);
    }
    // Right environments over sites (bond+1, L).
    eff.renv.assign(1, Eigen::MatrixXcd::Ones(1, 1));
    for (long j = mps.n_sites - 1; j > bond + 1; --j) {
        const auto& t = mps.tensors[j];
        const auto& w = mpo.sites[j];
        std::vector<Eigen::MatrixXcd> next(w.wl, Eigen::MatrixXcd::Zero(t.dl, t.dl));
        for (long n = 0; n < w.wr; ++n) {
            // h[sp](a', b) = sum_b' conj(M(a', sp, b')) renv(b', b)
            Eigen::MatrixXcd h[2] = {t.m.middleRows(0, t.dl).conjugate() * eff.renv[n],
                                     t.m.middleRows(t.dl, t.dl).conjugate() * eff.renv[n]};
            for (long m = 0; m < w.wl; ++m) {
                const Eigen::Matrix2cd& op = w.at(m, n);
                if (op.isZero(0)) continue;
                for (int sp = 0; sp < 2; ++sp)
                    for (int s = 0; s < 2; ++s)
                        if (op(sp, s) != cplx(0, 0))
                            next[m] +=
                                op(sp, s) * h[sp] * t.m.middleRows(t.dl * s, t.dl).transpose();
            }
        }
        eff.renv = std::move(next);
    }

    Eigen::MatrixXcd theta0 = mps.tensors[bond].m * mps.tensors[bond + 1].right_view();
    Eigen::VectorXcd v0 = Eigen::Map<Eigen::VectorXcd>(theta0.data(), theta0.size());

    LanczosOptions opt;
    opt.tol = tol;
    opt.max_matvecs = 200;
    opt.krylov_dim = 40;
    auto res = lowest_eigenpair<cplx>(eff, v0, opt);
    if (!res.converged)
        throw SolverError("two-site eigensolve did not converge", res.residual);

    EigensolveResult out;
    out.energy = res.eigenvalue;
    out.matvecs = res.matvecs;
    out.theta.dl = eff.dl;
    out.theta.dr = eff.dr;
    out.theta.m = Eigen::Map<Eigen::MatrixXcd>(res.eigenvector.data(), 2 * eff.dl, 2 * eff.dr);
    return out;
}

}  // namespace camps
