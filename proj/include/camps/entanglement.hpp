#pragma once

#include <vector>

#include "camps/errors.hpp"

namespace camps {

// Schmidt data for one bipartition of a normalized state.
//   cut: bond index p in {1..L-1}, sites 1..p vs p+1..L (1-based)
//   probs: squared Schmidt values, descending, summing to 1
//   entropy: -sum p ln p
//   spectrum: -ln p per kept probability
struct EntanglementData {
    long cut = 0;
    std::vector<double> probs;
    double entropy = 0.0;
    std::vector<double> spectrum;
};

// Builds EntanglementData from raw squared Schmidt values (any order, not
// necessarily normalized; must sum to 1 within 1e-10 after clamping tiny
// negatives from eigensolvers). Probabilities below 1e-30 are dropped.
EntanglementData make_entanglement_data(long cut, std::vector<double> probs);

}  // namespace camps
