#include "camps/mpo.hpp"

#include <map>

#include "camps/dense.hpp"
#include "camps/errors.hpp"

namespace camps {

namespace {

Eigen::Matrix2cd letter_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

// Automaton state at a cut: the term letters still owed to the right of the
// cut. The empty suffix is the completed state; not-started is kept apart.
using Suffix = std::vector<std::pair<long, Pauli>>;

Suffix remaining_after(const PauliString& s, long cut) {
    Suffix out;
    for (long j : s.support())
        if (j >= cut) out.emplace_back(j, s.at(j));
    return out;
}

}  // namespace

long MpoOperator::max_bond() const {
    long best = 0;
    for (const auto& site : sites) best = std::max({best, site.wl, site.wr});
    return best;
}

MpoOperator compile_mpo(const PauliSum& h) {
    const long L = h.n_sites();
    PauliSum hc = canonical_form(h);

    MpoOperator mpo;
    mpo.n_sites = L;
    mpo.sites.resize(L);
    if (hc.n_terms() == 0) {
        for (auto& site : mpo.sites)
            site.ops.assign(1, Eigen::Matrix2cd::Zero());
        return mpo;
    }

    // State indices per cut. 0 = not started (if present), then completed,
    // then live suffixes in deterministic (map) order. Cut 0 holds only the
    // not-started state and cut L only the completed one, which makes the
    // boundary bonds dimension 1.
    struct CutStates {
        bool has_vacuum = false, has_done = false;
        std::map<Suffix, long> live;
        long index_vacuum = -1, index_done = -1;
        long count = 0;

        void finalize() {
            long i = 0;
            if (has_vacuum) index_vacuum = i++;
            if (has_done) index_done = i++;
            for (auto& [sig, idx] : live) idx = i++;
            count = i;
        }
        long of_suffix(const Suffix& sig) const {
            return sig.empty() ? index_done : live.at(sig);
        }
    };
    std::vector<CutStates> cuts(L + 1);
    cuts[0].has_vacuum = true;

    const auto& terms = hc.terms();
    std::vector<long> first(terms.size()), last(terms.size());
    for (size_t t = 0; t < terms.size(); ++t) {
        auto supp = terms[t].str.support();
        first[t] = supp.empty() ? 0 : supp.front();
        last[t] = supp.empty() ? -1 : supp.back();
    }
    for (long c = 1; c <= L; ++c) {
        for (size_t t = 0; t < terms.size(); ++t) {
            if (first[t] >= c && c < L) cuts[c].has_vacuum = true;
            if (last[t] < c) cuts[c].has_done = true;
            if (first[t] < c && c <= last[t])
                cuts[c].live.emplace(remaining_after(terms[t].str, c), -1);
        }
    }
    for (auto& cs : cuts) cs.finalize();

    for (long j = 0; j < L; ++j) {
        auto& site = mpo.sites[j];
        site.wl = cuts[j].count;
        site.wr = cuts[j + 1].count;
        site.ops.assign(site.wl * site.wr, Eigen::Matrix2cd::Zero());

        if (cuts[j].has_vacuum && cuts[j + 1].has_vacuum)
            site.at(cuts[j].index_vacuum, cuts[j + 1].index_vacuum) += letter_matrix(Pauli::I);
        if (cuts[j].has_done && cuts[j + 1].has_done)
            site.at(cuts[j].index_done, cuts[j + 1].index_done) += letter_matrix(Pauli::I);

        for (size_t t = 0; t < terms.size(); ++t) {
            if (first[t] == j || (last[t] == -1 && j == 0)) {
                // Term starts here; coefficient rides on this block.
                Suffix next = remaining_after(terms[t].str, j + 1);
                site.at(cuts[j].index_vacuum, cuts[j + 1].of_suffix(next)) +=
                    terms[t].coeff * letter_matrix(terms[t].str.at(j));
            }
        }
        // Active transitions are per live STATE: terms sharing a suffix share
        // the state, so emitting per term would multiply the shared letters.
        for (const auto& [cur, idx] : cuts[j].live) {
            Pauli letter = Pauli::I;
            Suffix next;
            for (const auto& [pos, p] : cur) {
                if (pos == j)
                    letter = p;
                else
                    next.emplace_back(pos, p);
            }
            site.at(idx, cuts[j + 1].of_suffix(next)) += letter_matrix(letter);
        }
    }
    return mpo;
}

MpoOperator identity_mpo(long n_sites) {
    if (n_sites < 1) throw ArgumentError("identity_mpo needs at least one site");
    PauliSum id(n_sites);
    id.add(1.0, PauliString(n_sites));
    return compile_mpo(id);
}

Eigen::MatrixXcd mpo_to_dense(const MpoOperator& mpo) {
    if (mpo.n_sites > 10) throw SizeError("mpo_to_dense limited to 10 sites");
    if (mpo.n_sites < 1) throw ArgumentError("empty operator");
    std::vector<Eigen::MatrixXcd> partial{Eigen::MatrixXcd::Ones(1, 1)};
    for (long j = 0; j < mpo.n_sites; ++j) {
        const auto& site = mpo.sites[j];
        const long dim = partial.empty() ? 0 : partial[0].rows();
        std::vector<Eigen::MatrixXcd> next(site.wr,
                                           Eigen::MatrixXcd::Zero(2 * dim, 2 * dim));
        for (long m = 0; m < site.wl; ++m)
            for (long n = 0; n < site.wr; ++n) {
                const Eigen::Matrix2cd& w = site.at(m, n);
                if (w.isZero(0)) continue;
                // kron(partial, w): the newer site is the less significant bit.
                for (int sp = 0; sp < 2; ++sp)
                    for (int s = 0; s < 2; ++s)
                        if (w(sp, s) != cplx(0, 0))
                            next[n](Eigen::seqN(sp, dim, 2), Eigen::seqN(s, dim, 2)) +=
                                w(sp, s) * partial[m];
            }
        partial = std::move(next);
    }
    return partial[0];
}

}  // namespace camps
