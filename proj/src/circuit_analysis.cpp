#include "camps/circuit_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "camps/errors.hpp"

namespace camps {

namespace {

void check_bonds(const Circuit& c) {
    if (c.n_sites < 2) throw ArgumentError("circuit needs at least two sites");
    for (const auto& [bond, gate] : c.gates)
        if (bond < 0 || bond + 1 >= c.n_sites) throw ArgumentError("gate bond out of range");
}

}  // namespace

Circuit circuit_from_log(long n_sites, const CircuitLog& log) {
    Circuit c;
    c.n_sites = n_sites;
    c.gates.reserve(log.size());
    for (const auto& e : log) c.gates.emplace_back(e.bond, e.gate);
    check_bonds(c);
    return c;
}

PauliSum conjugate_full_hamiltonian(const PauliSum& h, const Circuit& c) {
    if (h.n_sites() != c.n_sites) throw ArgumentError("hamiltonian/circuit size mismatch");
    check_bonds(c);
    PauliSum cur = canonical_form(h);
    for (const auto& [bond, gate] : c.gates) cur = apply_disentangler(cur, gate, bond);
    return cur;
}

PauliSum rotate_sites(const PauliSum& h, const std::vector<SingleQubitClifford>& r) {
    if (long(r.size()) != h.n_sites()) throw ArgumentError("one rotation per site required");
    PauliSum out(h.n_sites());
    for (const auto& t : h.terms()) {
        PauliString s(h.n_sites());
        double coeff = t.coeff;
        for (long j = 0; j < h.n_sites(); ++j) {
            auto [p, sign] = r[j].conj_letter(t.str.at(j));
            s.set(j, p);
            coeff *= sign;
        }
        out.add(coeff, s);
    }
    return canonical_form(out);
}

namespace {

struct SearchTerm {
    double coeff = 0.0;          // sign updated as rotations are fixed
    std::vector<Pauli> letters;  // letters at sites < depth already rotated
};

std::vector<SearchTerm> to_search_terms(const PauliSum& h) {
    std::vector<SearchTerm> out;
    out.reserve(h.terms().size());
    for (const auto& t : h.terms()) {
        SearchTerm st;
        st.coeff = t.coeff;
        st.letters.resize(h.n_sites());
        for (long j = 0; j < h.n_sites(); ++j) st.letters[j] = t.str.at(j);
        out.push_back(std::move(st));
    }
    return out;
}

// Structural key of a term once rotations are fixed through site k: the
// letters up to k plus a presence mask beyond. Rotations never move support,
// so matching terms must agree on this key; coefficients are compared per
// key group (signed when the support is exhausted, absolute while sites
// beyond k can still flip the sign).
std::string term_key(const std::vector<Pauli>& letters, long k) {
    std::string s;
    s.reserve(letters.size() + 1);
    for (long j = 0; j <= k; ++j) s += pauli_char(letters[j]);
    s += '|';
    for (size_t j = k + 1; j < letters.size(); ++j)
        s += letters[j] == Pauli::I ? '0' : '1';
    return s;
}

bool open_beyond(const std::vector<Pauli>& letters, long k) {
    for (size_t j = k + 1; j < letters.size(); ++j)
        if (letters[j] != Pauli::I) return true;
    return false;
}

bool groups_match(const std::vector<SearchTerm>& a, const std::vector<SearchTerm>& b, long k) {
    std::map<std::string, std::vector<double>> ga, gb;
    for (const auto& t : a)
        ga[term_key(t.letters, k)].push_back(open_beyond(t.letters, k) ? std::abs(t.coeff)
                                                                       : t.coeff);
    for (const auto& t : b)
        gb[term_key(t.letters, k)].push_back(open_beyond(t.letters, k) ? std::abs(t.coeff)
                                                                       : t.coeff);
    if (ga.size() != gb.size()) return false;
    auto ia = ga.begin();
    auto ib = gb.begin();
    for (; ia != ga.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        auto& va = ia->second;
        auto& vb = ib->second;
        if (va.size() != vb.size()) return false;
        std::sort(va.begin(), va.end());
        std::sort(vb.begin(), vb.end());
        for (size_t i = 0; i < va.size(); ++i)
            if (std::abs(va[i] - vb[i]) > 1e-9 * std::max(1.0, std::abs(va[i]))) return false;
    }
    return true;
}

struct RotationSearch {
    long L = 0;
    std::vector<SearchTerm> h;             // mutated in place with undo
    const std::vector<SearchTerm>* target = nullptr;
    std::vector<bool> site_used;           // any letter at this site, either side
    std::vector<SingleQubitClifford> rot;

    bool dfs(long k) {
        if (k == L) return true;
        const auto& singles = enumerate_single_qubit_cliffords();
        if (!site_used[k]) {  // unconstrained site: gauge-fix the identity
            rot[k] = singles.front();
            return dfs(k + 1);
        }
        std::vector<Pauli> saved_letters(h.size());
        std::vector<double> saved_coeffs(h.size());
        for (size_t i = 0; i < h.size(); ++i) {
            saved_letters[i] = h[i].letters[k];
            saved_coeffs[i] = h[i].coeff;
        }
        for (const auto& r : singles) {
            for (auto& t : h) {
                auto [p, sign] = r.conj_letter(t.letters[k]);
                t.letters[k] = p;
                t.coeff *= sign;
            }
            if (groups_match(h, *target, k)) {
                rot[k] = r;
                if (dfs(k + 1)) return true;
            }
            for (size_t i = 0; i < h.size(); ++i) {
                h[i].letters[k] = saved_letters[i];
                h[i].coeff = saved_coeffs[i];
            }
        }
        return false;
    }
};

}  // namespace

MatchReport match_dual_model(const PauliSum& h_conj, const PauliSum& target) {
    if (h_conj.n_sites() != target.n_sites())
        throw ArgumentError("hamiltonian/target size mismatch");
    const long L = h_conj.n_sites();
    PauliSum hc = canonical_form(h_conj);
    PauliSum tc = canonical_form(target);

    MatchReport rep;
    rep.local_rotation.assign(L, SingleQubitClifford());
    auto fail = [&]() {
        rep.matched = false;
        rep.residual_terms = canonical_form(hc + tc * -1.0);
        return rep;
    };

    if (hc.n_terms() != tc.n_terms()) return fail();

    RotationSearch search;
    search.L = L;
    search.h = to_search_terms(hc);
    auto target_terms = to_search_terms(tc);
    search.target = &target_terms;
    search.rot.assign(L, SingleQubitClifford());
    search.site_used.assign(L, false);
    for (const auto& t : search.h)
        for (long j = 0; j < L; ++j)
            if (t.letters[j] != Pauli::I) search.site_used[j] = true;
    for (const auto& t : target_terms)
        for (long j = 0; j < L; ++j)
            if (t.letters[j] != Pauli::I) search.site_used[j] = true;

    if (!search.dfs(0)) return fail();

    // The prune chain proves equality already; verify end to end anyway.
    PauliSum rotated = rotate_sites(hc, search.rot);
    PauliSum diff = canonical_form(rotated + tc * -1.0);
    for (const auto& t : diff.terms())
        if (std::abs(t.coeff) > 1e-9) return fail();

    rep.matched = true;
    rep.local_rotation = std::move(search.rot);
    rep.residual_terms = PauliSum(L);
    return rep;
}

Circuit canonicalize_circuit(const Circuit& c) {
    check_bonds(c);
    std::vector<std::pair<long, CliffordTableau>> g;
    for (const auto& e : c.gates)
        if (interaction_class(e.second) != InteractionClass::local_class) g.push_back(e);

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < g.size(); ++i) {
            if (g[i].first == g[i + 1].first) {
                CliffordTableau fused = compose(g[i + 1].second, g[i].second);
                g[i].second = fused;
                g.erase(g.begin() + i + 1);
                if (interaction_class(fused) == InteractionClass::local_class)
                    g.erase(g.begin() + i);
                changed = true;
                break;
            }
            if (std::abs(g[i].first - g[i + 1].first) >= 2 && g[i].first > g[i + 1].first) {
                std::swap(g[i], g[i + 1]);
                changed = true;
            }
        }
    }
    return Circuit{c.n_sites, std::move(g)};
}

namespace {

// Bonds must form {a, a+2, ..., a+2(m-1)}.
bool step2_run(const std::vector<long>& bonds) {
    for (size_t i = 0; i + 1 < bonds.size(); ++i)
        if (bonds[i + 1] - bonds[i] != 2) return false;
    return !bonds.empty();
}

bool pyramid_related(const std::vector<long>& prev, const std::vector<long>& cur) {
    if (!step2_run(prev) || !step2_run(cur)) return false;
    if (cur.size() + 1 == prev.size() && cur.front() == prev.front() + 1) return true;  // shrink
    if (cur.size() == prev.size() + 1 && cur.front() == prev.front() - 1) return true;  // grow
    return false;
}

std::string bonds_str(const std::vector<long>& bonds) {
    std::string s = "{";
    for (size_t i = 0; i < bonds.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(bonds[i]);
    }
    return s + "}";
}

}  // namespace

PatternReport detect_pattern(const Circuit& c0) {
    Circuit c = canonicalize_circuit(c0);
    const long L = c.n_sites;
    PatternReport rep;

    bool stair = long(c.gates.size()) == L - 1 && L >= 2;
    for (long i = 0; stair && i < L - 1; ++i)
        stair = c.gates[i].first == i &&
                interaction_class(c.gates[i].second) == InteractionClass::cnot_class;
    if (stair) {
        rep.kind = PatternKind::cnot_staircase;
        rep.stair_first = 0;
        rep.stair_last = L - 2;
        rep.summary =
            "cnot-class staircase, bonds 0.." + std::to_string(L - 2) + " ascending";
        return rep;
    }

    // Pyramid: layer the swap-class subsequence (earliest layer after the
    // last gate touching either site), then look for the longest chain of
    // consecutive triangle-related layers.
    std::vector<long> site_depth(L, -1);
    std::vector<std::vector<long>> layers;
    for (const auto& [bond, gate] : c.gates) {
        if (interaction_class(gate) != InteractionClass::swap_class) continue;
        long d = std::max(site_depth[bond], site_depth[bond + 1]) + 1;
        if (d == long(layers.size())) layers.emplace_back();
        layers[d].push_back(bond);
        site_depth[bond] = site_depth[bond + 1] = d;
    }
    for (auto& l : layers) std::sort(l.begin(), l.end());

    long best_start = -1, best_len = 0;
    for (long s = 0; s < long(layers.size()); ++s) {
        long e = s;
        while (e + 1 < long(layers.size()) && pyramid_related(layers[e], layers[e + 1])) ++e;
        if (e - s + 1 > best_len) {
            best_len = e - s + 1;
            best_start = s;
        }
    }
    if (best_len >= 2) {
        rep.kind = PatternKind::swap_pyramid_present;
        rep.pyramid_height = best_len;
        rep.pyramid_base = layers[best_start];
        for (long t = best_start; t < best_start + best_len; ++t)
            if (layers[t].size() > rep.pyramid_base.size()) rep.pyramid_base = layers[t];
        rep.summary = "swap pyramid, base bonds " + bonds_str(rep.pyramid_base) + ", height " +
                      std::to_string(rep.pyramid_height);
        return rep;
    }

    rep.summary = "no recognized pattern";
    return rep;
}

MpoOperator circuit_to_mpo(const Circuit& c) {
    check_bonds(c);
    const long L = c.n_sites;
    if (L > 12) throw SizeError("dense circuit-to-mpo path is limited to 12 sites");
    const long dim = 1L << L;

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& [bond, gate] : c.gates) {
        Eigen::Matrix4cd g = tableau_to_unitary(gate);
        const long w = 1L << (L - 2 - bond);
        const long blocks = 1L << bond;
        Eigen::MatrixXcd next(dim, dim);
        for (long a = 0; a < blocks; ++a) {
            const long base = a * 4 * w;
            for (int sp = 0; sp < 4; ++sp) {
                auto dst = next.middleRows(base + sp * w, w);
                dst.setZero();
                for (int s = 0; s < 4; ++s)
                    if (g(sp, s) != cplx(0, 0)) dst += g(sp, s) * u.middleRows(base + s * w, w);
            }
        }
        u = std::move(next);
    }

    // Reorder into one fused digit d_j = 2*row_bit + col_bit per site, site 0
    // most significant, then split site by site.
    std::vector<long> spread(dim);
    for (long r = 0; r < dim; ++r) {
        long t = 0;
        for (long j = 0; j < L; ++j)
            if (r & (1L << (L - 1 - j))) t += 1L << (2 * (L - 1 - j));
        spread[r] = t;
    }
    Eigen::VectorXcd tens(dim * dim);
    for (long col = 0; col < dim; ++col)
        for (long row = 0; row < dim; ++row) tens[2 * spread[row] + spread[col]] = u(row, col);

    MpoOperator mpo;
    mpo.n_sites = L;
    mpo.sites.resize(L);
    const double cutoff = 1e-12;

    long chi = 1;
    Eigen::MatrixXcd cur =
        Eigen::Map<Eigen::MatrixXcd>(tens.data(), dim * dim / 4, 4).transpose();
    for (long j = 0; j + 1 < L; ++j) {
        // rows of cur: chi * d_j with digit-major blocks; columns: remaining digits
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(cur, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& s = svd.singularValues();
        long keep = 0;
        while (keep < s.size() && s(keep) >= cutoff) ++keep;
        if (keep == 0) keep = 1;

        auto& site = mpo.sites[j];
        site.wl = chi;
        site.wr = keep;
        site.ops.assign(chi * keep, Eigen::Matrix2cd::Zero());
        for (long m = 0; m < chi; ++m)
            for (long n = 0; n < keep; ++n)
                for (int sp = 0; sp < 2; ++sp)
                    for (int ss = 0; ss < 2; ++ss)
                        site.at(m, n)(sp, ss) = svd.matrixU()(m + chi * (2 * sp + ss), n);

        Eigen::MatrixXcd carry = s.head(keep).asDiagonal() *
                                 svd.matrixV().leftCols(keep).adjoint();
        if (j + 2 < L) {
            // refuse the next digit into the rows: (keep, 4*rest) -> (4*keep, rest)
            const long rest = carry.cols() / 4;
            Eigen::MatrixXcd next(4 * keep, rest);
            for (int d = 0; d < 4; ++d)
                next.middleRows(d * keep, keep) = carry.middleCols(d * rest, rest);
            cur = std::move(next);
        } else {
            cur = std::move(carry);  // (keep, 4): the last site's digit stays in columns
        }
        chi = keep;
    }
    auto& last = mpo.sites[L - 1];
    last.wl = chi;
    last.wr = 1;
    last.ops.assign(chi, Eigen::Matrix2cd::Zero());
    for (long m = 0; m < chi; ++m)
        for (int sp = 0; sp < 2; ++sp)
            for (int ss = 0; ss < 2; ++ss) last.at(m, 0)(sp, ss) = cur(m, 2 * sp + ss);
    return mpo;
}

}  // namespace camps
