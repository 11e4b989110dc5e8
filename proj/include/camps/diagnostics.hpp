#pragma once

#include <utility>
#include <vector>

namespace camps {

// Least-squares fit of S = (c/6) ln L + b.
struct FitResult {
    double c = 0.0;
    double b = 0.0;
    double residual = 0.0;  // RMS over the input points
};

// Fit of dS = alpha * L^(-beta) + gamma with beta constrained positive.
// gamma is the large-L limit of the entropy reduction.
struct DeltaSFit {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double residual = 0.0;
};

// points are (L, S) pairs, at least 3, with distinct L.
FitResult fit_central_charge(const std::vector<std::pair<double, double>>& points);

// points are (L, dS) pairs, at least 4; every dS must be nonnegative.
DeltaSFit fit_entropy_reduction(const std::vector<std::pair<double, double>>& points);

// Affine map sending the lowest level to target_lowest and the second
// distinct level to target_second. Degeneracies are preserved; input must be
// sorted ascending and hold at least two distinct levels.
std::vector<double> normalize_spectrum(const std::vector<double>& spec, double target_lowest,
                                       double target_second);

// |e - e_ref| / |e_ref|; the reference must be nonzero.
double relative_energy_error(double e, double e_ref);

}  // namespace camps
