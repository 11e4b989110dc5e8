#include "camps/models.hpp"

namespace camps {

namespace {

PauliString word(long L, std::initializer_list<std::pair<long, Pauli>> letters) {
    PauliString s(L);
    for (auto& [site, p] : letters) s.set(site, p);
    return s;
}

}  // namespace

Model model_from_name(const std::string& name) {
    if (name == "ising") return Model::ising;
    if (name == "xxz") return Model::xxz;
    throw ArgumentError("unknown model: '" + name + "'");
}

std::string model_name(Model m) { return m == Model::ising ? "ising" : "xxz"; }

PauliSum ising_chain(long L, double g) {
    if (L < 1) throw ArgumentError("ising_chain: L must be positive");
    PauliSum h(L);
    for (long j = 0; j + 1 < L; ++j)
        h.add(-1.0, word(L, {{j, Pauli::Z}, {j + 1, Pauli::Z}}));
    for (long j = 0; j < L; ++j) h.add(-g, word(L, {{j, Pauli::X}}));
    return canonical_form(h);
}

PauliSum xxz_chain(long L, double g) {
    if (L < 2) throw ArgumentError("xxz_chain: L must be at least 2");
    PauliSum h(L);
    for (long j = 0; j + 1 < L; ++j) {
        h.add(1.0, word(L, {{j, Pauli::X}, {j + 1, Pauli::X}}));
        h.add(1.0, word(L, {{j, Pauli::Y}, {j + 1, Pauli::Y}}));
        h.add(g, word(L, {{j, Pauli::Z}, {j + 1, Pauli::Z}}));
    }
    return canonical_form(h);
}

PauliSum build_model(Model m, long L, double g) {
    return m == Model::ising ? ising_chain(L, g) : xxz_chain(L, g);
}

PauliSum dual_ising_chain(long L, double g) {
    if (L < 2) throw ArgumentError("dual_ising_chain: L must be at least 2");
    PauliSum h(L);
    for (long j = 0; j + 1 < L; ++j)
        h.add(-g, word(L, {{j, Pauli::Z}, {j + 1, Pauli::Z}}));
    for (long j = 0; j + 1 < L; ++j) h.add(-1.0, word(L, {{j, Pauli::X}}));
    h.add(-g, word(L, {{0, Pauli::Z}}));
    return canonical_form(h);
}

PauliSum ashkin_teller_chain(long L, double g) {
    if (L < 6 || L % 2 != 0)
        throw ArgumentError("ashkin_teller_chain: L must be even and at least 6");
    PauliSum h(L);
    // 1-based site labels below match the comment in the header; subtract one
    // when building the strings.
    auto X = Pauli::X;
    auto Y = Pauli::Y;
    for (long j = 2; j <= L - 3; ++j)
        h.add(1.0, word(L, {{j - 1, X}, {j + 1, X}}));
    for (long j = 2; j <= L - 1; ++j) h.add(1.0, word(L, {{j - 1, Y}}));
    for (long l = 1; l <= L / 2 - 2; ++l)
        h.add(-g, word(L, {{2 * l - 1, X}, {2 * l, X}, {2 * l + 1, X}, {2 * l + 2, X}}));
    for (long l = 1; l <= L / 2 - 1; ++l)
        h.add(-g, word(L, {{2 * l - 1, Y}, {2 * l, Y}}));
    h.add(1.0, word(L, {{0, X}, {1, X}}));
    h.add(1.0, word(L, {{2, X}}));
    h.add(1.0, word(L, {{L - 3, X}}));
    h.add(1.0, word(L, {{L - 2, X}, {L - 1, X}}));
    h.add(-g, word(L, {{0, X}, {1, X}, {2, X}}));
    h.add(-g, word(L, {{L - 3, X}, {L - 2, X}, {L - 1, X}}));
    return canonical_form(h);
}

}  // namespace camps
