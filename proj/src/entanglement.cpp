#include "camps/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace camps {

EntanglementData make_entanglement_data(long cut, std::vector<double> probs) {
    if (probs.empty()) throw DegenerateInputError("empty Schmidt spectrum");
    double total = 0.0;
    for (double& p : probs) {
        if (p < 0) {
            if (p < -1e-10) throw DegenerateInputError("negative Schmidt probability");
            p = 0.0;
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw DegenerateInputError("Schmidt probabilities sum to " + std::to_string(total) +
                                   ", expected 1");
    std::sort(probs.begin(), probs.end(), std::greater<double>());
    while (!probs.empty() && probs.back() < 1e-30) probs.pop_back();
    EntanglementData out;
    out.cut = cut;
    out.probs = std::move(probs);
    out.spectrum.reserve(out.probs.size());
    for (double p : out.probs) {
        out.entropy -= p * std::log(p);
        out.spectrum.push_back(-std::log(p));
    }
    if (out.entropy < 0) out.entropy = 0;  // rounding on pure states
    return out;
}

}  // namespace camps
