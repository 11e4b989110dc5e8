#pragma once

#include <Eigen/Dense>
#include <vector>

#include "camps/errors.hpp"

namespace camps {

struct LanczosOptions {
    double tol = 1e-9;        // residual norm target, absolute
    long max_matvecs = 200;   // total operator applications
    long krylov_dim = 40;     // restart length
};

template <class Scalar>
struct LanczosOutcome {
    double eigenvalue = 0.0;
    Eigen::Vector<Scalar, Eigen::Dynamic> eigenvector;
    double residual = 0.0;
    long matvecs = 0;
    bool converged = false;
};

// Restarted Lanczos with full reorthogonalization for the LOWEST eigenpair of
// a Hermitian operator. `apply` maps a vector to H*vector. Vectors in
// `deflate` (assumed orthonormal) are projected out, so the result is the
// lowest eigenpair orthogonal to them. Deterministic for a fixed v0.
//
// With full reorthogonalization the estimate beta*|s_last| tracks the true
// residual closely; it is what `residual` reports between restarts.
template <class Scalar, class Apply>
LanczosOutcome<Scalar> lowest_eigenpair(
    const Apply& apply, Eigen::Vector<Scalar, Eigen::Dynamic> v0, const LanczosOptions& opt,
    const std::vector<Eigen::Vector<Scalar, Eigen::Dynamic>>* deflate = nullptr) {
    using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
    const long dim = v0.size();
    if (dim < 1) throw ArgumentError("lanczos: empty start vector");

    auto project_out = [&](Vec& w) {
        if (!deflate) return;
        for (const auto& d : *deflate) w -= d.dot(w) * d;
    };

    LanczosOutcome<Scalar> out;
    project_out(v0);
    double nrm = v0.norm();
    if (nrm < 1e-14) throw ArgumentError("lanczos: start vector vanishes (after deflation)");
    v0 /= nrm;

    const long m = std::max<long>(2, std::min<long>(opt.krylov_dim, dim));
    std::vector<Vec> V;
    std::vector<double> alpha, beta;  // beta[k] couples V[k] and V[k+1]

    Vec x = v0;
    double theta = 0.0;
    while (true) {
        V.assign(1, x);
        alpha.clear();
        beta.clear();
        bool cycle_done = false;
        while (!cycle_done) {
            Vec w = apply(V.back());
            ++out.matvecs;
            project_out(w);
            double a = std::real(Scalar(V.back().dot(w)));
            alpha.push_back(a);
            w -= a * V.back();
            if (V.size() > 1) w -= beta.back() * V[V.size() - 2];
            // Full reorthogonalization, two passes.
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& v : V) w -= v.dot(w) * v;
            double b = w.norm();

            long k = static_cast<long>(alpha.size());
            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
            for (long i = 0; i < k; ++i) {
                T(i, i) = alpha[i];
                if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            theta = es.eigenvalues()(0);
            Eigen::VectorXd s = es.eigenvectors().col(0);
            out.residual = b * std::abs(s(k - 1));

            bool est_ok = out.residual <= opt.tol;
            bool breakdown = b < 1e-13;
            bool full = static_cast<long>(V.size()) >= m || static_cast<long>(V.size()) >= dim;
            bool budget = out.matvecs >= opt.max_matvecs;
            if (est_ok || breakdown || full || budget) {
                x = Vec::Zero(dim);
                for (long i = 0; i < k; ++i) x += s(i) * V[i];
                x.normalize();
                out.converged = est_ok || breakdown;
                if (breakdown) out.residual = 0.0;
                cycle_done = true;
                if (out.converged || budget) {
                    out.eigenvalue = theta;
                    out.eigenvector = x;
                    return out;
                }
            } else {
                beta.push_back(b);
                V.push_back(w / b);
            }
        }
        // restart from the current Ritz vector
    }
}

}  // namespace camps
