#include "camps/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "camps/errors.hpp"

namespace camps {

namespace {

double rms(const Eigen::VectorXd& r) { return std::sqrt(r.squaredNorm() / double(r.size())); }

// Best alpha, gamma for fixed beta, and the squared residual they achieve.
// The model is linear in both once beta is pinned.
double profile_residual2(const Eigen::VectorXd& l, const Eigen::VectorXd& y, double beta,
                         double* alpha, double* gamma) {
    const long n = l.size();
    Eigen::MatrixXd a(n, 2);
    a.col(0) = (-beta * l.array().log()).exp();
    a.col(1).setOnes();
    Eigen::Vector2d x = a.colPivHouseholderQr().solve(y);
    if (alpha) *alpha = x(0);
    if (gamma) *gamma = x(1);
    return (a * x - y).squaredNorm();
}

}  // namespace

FitResult fit_central_charge(const std::vector<std::pair<double, double>>& points) {
    const long n = long(points.size());
    if (n < 3) throw FitError("central charge fit needs at least 3 points");
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd y(n);
    for (long i = 0; i < n; ++i) {
        if (!(points[i].first > 0)) throw FitError("chain length must be positive");
        a(i, 0) = std::log(points[i].first) / 6.0;
        a(i, 1) = 1.0;
        y(i) = points[i].second;
    }
    // All-equal L makes the design rank deficient.
    if ((a.col(0).array() - a(0, 0)).abs().maxCoeff() < 1e-12)
        throw FitError("degenerate design matrix: chain lengths coincide");
    Eigen::Vector2d x = a.colPivHouseholderQr().solve(y);
    FitResult out;
    out.c = x(0);
    out.b = x(1);
    out.residual = rms(a * x - y);
    return out;
}

DeltaSFit fit_entropy_reduction(const std::vector<std::pair<double, double>>& points) {
    const long n = long(points.size());
    if (n < 4) throw FitError("entropy reduction fit needs at least 4 points");
    Eigen::VectorXd l(n), y(n);
    for (long i = 0; i < n; ++i) {
        if (!(points[i].first > 0)) throw FitError("chain length must be positive");
        if (points[i].second < 0) throw FitError("entropy reduction must be nonnegative");
        l(i) = points[i].first;
        y(i) = points[i].second;
    }
    if (l.maxCoeff() - l.minCoeff() < 1e-12)
        throw FitError("degenerate design matrix: chain lengths coincide");

    // Coarse log-spaced scan over the decay exponent, then golden-section
    // refinement between the scan neighbors of the minimum.
    const double lo = 1e-3, hi = 16.0;
    const int n_scan = 241;
    double best_beta = lo, best_r2 = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < n_scan; ++i) {
        double beta = lo * std::pow(hi / lo, double(i) / (n_scan - 1));
        double r2 = profile_residual2(l, y, beta, nullptr, nullptr);
        if (r2 < best_r2) {
            best_r2 = r2;
            best_beta = beta;
            best_i = i;
        }
    }
    double a = lo * std::pow(hi / lo, double(std::max(0, best_i - 1)) / (n_scan - 1));
    double b = lo * std::pow(hi / lo, double(std::min(n_scan - 1, best_i + 1)) / (n_scan - 1));
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = profile_residual2(l, y, x1, nullptr, nullptr);
    double f2 = profile_residual2(l, y, x2, nullptr, nullptr);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * b; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = profile_residual2(l, y, x1, nullptr, nullptr);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = profile_residual2(l, y, x2, nullptr, nullptr);
        }
    }
    best_beta = 0.5 * (a + b);

    DeltaSFit out;
    out.beta = best_beta;
    double r2 = profile_residual2(l, y, best_beta, &out.alpha, &out.gamma);
    out.residual = std::sqrt(r2 / double(n));
    if (!std::isfinite(out.residual) || !std::isfinite(out.alpha) || !std::isfinite(out.gamma))
        throw FitError("entropy reduction fit did not converge, residual " +
                       std::to_string(out.residual));
    return out;
}

std::vector<double> normalize_spectrum(const std::vector<double>& spec, double target_lowest,
                                       double target_second) {
    if (spec.empty()) throw DegenerateInputError("empty spectrum");
    for (size_t i = 1; i < spec.size(); ++i)
        if (spec[i] < spec[i - 1]) throw ArgumentError("spectrum must be sorted ascending");
    const double scale = std::max(1.0, std::abs(spec.back()));
    const double tol = 1e-9 * scale;
    double lowest = spec.front();
    double second = lowest;
    bool found = false;
    for (double v : spec)
        if (v > lowest + tol) {
            second = v;
            found = true;
            break;
        }
    if (!found) throw DegenerateInputError("fewer than two distinct levels");
    const double a = (target_second - target_lowest) / (second - lowest);
    const double c = target_lowest - a * lowest;
    std::vector<double> out(spec.size());
    for (size_t i = 0; i < spec.size(); ++i) out[i] = a * spec[i] + c;
    return out;
}

double relative_energy_error(double e, double e_ref) {
    if (e_ref == 0.0) throw ArgumentError("zero reference energy");
    return std::abs(e - e_ref) / std::abs(e_ref);
}

}  // namespace camps
