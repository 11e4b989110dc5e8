#include "camps/clifford.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "camps/dense.hpp"

namespace camps {

namespace {

using Packed = CliffordTableau::Packed;

// Quarter turns for the product of two literal letters on one site, indexed
// by letter codes v = x + 2z (I=0, X=1, Z=2, Y=3).
constexpr int kTurns[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 3, 1},
    {0, 1, 0, 3},
    {0, 3, 1, 0},
};

Packed mult(Packed a, Packed b) {
    Packed r;
    r.xz = a.xz ^ b.xz;
    r.q = static_cast<uint8_t>(
        (a.q + b.q + kTurns[a.xz & 3][b.xz & 3] + kTurns[(a.xz >> 2) & 3][(b.xz >> 2) & 3]) & 3);
    return r;
}

bool anticommute_site(int u, int v) { return u != 0 && v != 0 && u != v; }

bool packed_commute(Packed a, Packed b) {
    int anti = (anticommute_site(a.xz & 3, b.xz & 3) ? 1 : 0) +
               (anticommute_site((a.xz >> 2) & 3, (b.xz >> 2) & 3) ? 1 : 0);
    return anti % 2 == 0;
}

int ycount(uint8_t xz) { return ((xz & 3) == 3 ? 1 : 0) + (((xz >> 2) & 3) == 3 ? 1 : 0); }

Packed conj_packed(const std::array<Packed, 4>& img, Packed p) {
    Packed acc{0, static_cast<uint8_t>((p.q + ycount(p.xz)) & 3)};
    if (p.xz & 1) acc = mult(acc, img[0]);
    if (p.xz & 2) acc = mult(acc, img[1]);
    if (p.xz & 4) acc = mult(acc, img[2]);
    if (p.xz & 8) acc = mult(acc, img[3]);
    return acc;
}

Pauli pauli_from_code(int v) {
    switch (v) {
        case 0: return Pauli::I;
        case 1: return Pauli::X;
        case 2: return Pauli::Z;
        default: return Pauli::Y;
    }
}

int code_of(Pauli p) { return pauli_order_code(p); }

Packed pack2(const PauliString& s) {
    if (s.n_sites() != 2) throw ArgumentError("expected a 2-site Pauli string");
    Packed out;
    out.xz = static_cast<uint8_t>(code_of(s.at(0)) | (code_of(s.at(1)) << 2));
    out.q = static_cast<uint8_t>(s.quarter_turns());
    return out;
}

PauliString unpack2(Packed p) {
    PauliString s(2);
    s.set(0, pauli_from_code(p.xz & 3));
    s.set(1, pauli_from_code((p.xz >> 2) & 3));
    s.set_quarter_turns(p.q);
    return s;
}

uint32_t image_key(Packed p) {
    return ((p.q == 2 ? 1u : 0u) << 4) | ((p.xz & 3u) << 2) | ((p.xz >> 2) & 3u);
}

void validate_images(const std::array<Packed, 4>& img) {
    for (const auto& p : img)
        if (p.q % 2 != 0)
            throw InvalidTableauError("tableau image has imaginary phase");
    if (!(!packed_commute(img[0], img[1]) && !packed_commute(img[2], img[3])))
        throw InvalidTableauError("images of a conjugate pair must anticommute");
    if (!(packed_commute(img[0], img[2]) && packed_commute(img[0], img[3]) &&
          packed_commute(img[1], img[2]) && packed_commute(img[1], img[3])))
        throw InvalidTableauError("images of commuting generators must commute");
}

const std::array<Packed, 4> kIdentityImages = {
    Packed{1, 0},   // X1
    Packed{2, 0},   // Z1
    Packed{4, 0},   // X2
    Packed{8, 0},   // Z2
};

Eigen::Matrix4cd generator_dense(int k) {
    return pauli_dense(unpack2(kIdentityImages[k]));
}

void fix_matrix_phase(Eigen::Matrix4cd& u) {
    for (long c = 0; c < 4; ++c)
        for (long r = 0; r < 4; ++r) {
            cplx v = u(r, c);
            if (std::abs(v) > 1e-9) {
                u *= std::conj(v) / std::abs(v);
                return;
            }
        }
}

}  // namespace

CliffordTableau::CliffordTableau() : img_(kIdentityImages) {}

CliffordTableau CliffordTableau::from_packed(const std::array<Packed, 4>& img) {
    validate_images(img);
    CliffordTableau t;
    t.img_ = img;
    return t;
}

CliffordTableau CliffordTableau::from_images(const PauliString& img_x1, const PauliString& img_z1,
                                             const PauliString& img_x2,
                                             const PauliString& img_z2) {
    return from_packed({pack2(img_x1), pack2(img_z1), pack2(img_x2), pack2(img_z2)});
}

PauliString CliffordTableau::image(int k) const {
    if (k < 0 || k > 3) throw ArgumentError("image index must be 0..3");
    return unpack2(img_[k]);
}

bool CliffordTableau::is_identity() const {
    static const uint32_t id_key = CliffordTableau().key();
    return key() == id_key;
}

uint32_t CliffordTableau::key() const {
    return (image_key(img_[0]) << 15) | (image_key(img_[1]) << 10) | (image_key(img_[2]) << 5) |
           image_key(img_[3]);
}

std::string CliffordTableau::encode() const {
    static const char* labels[4] = {"X1->", "Z1->", "X2->", "Z2->"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
        if (k) out += ';';
        out += labels[k];
        out += img_[k].q == 2 ? '-' : '+';
        out += pauli_char(pauli_from_code(img_[k].xz & 3));
        out += pauli_char(pauli_from_code((img_[k].xz >> 2) & 3));
    }
    return out;
}

CliffordTableau CliffordTableau::decode(const std::string& text) {
    static const char* labels[4] = {"X1->", "Z1->", "X2->", "Z2->"};
    std::array<Packed, 4> img;
    size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
        std::string label = labels[k];
        if (text.compare(pos, label.size(), label) != 0)
            throw FormatError("tableau text must read '" + label + "...' at position " +
                              std::to_string(pos) + ": '" + text + "'");
        pos += label.size();
        if (pos + 3 > text.size()) throw FormatError("tableau text truncated: '" + text + "'");
        char sign = text[pos];
        if (sign != '+' && sign != '-')
            throw FormatError(std::string("expected sign, got '") + sign + "'");
        Pauli left = pauli_from_char(text[pos + 1]);
        Pauli right = pauli_from_char(text[pos + 2]);
        img[k].xz = static_cast<uint8_t>(code_of(left) | (code_of(right) << 2));
        img[k].q = sign == '-' ? 2 : 0;
        pos += 3;
        if (k < 3) {
            if (pos >= text.size() || text[pos] != ';')
                throw FormatError("expected ';' between tableau images: '" + text + "'");
            ++pos;
        }
    }
    if (pos != text.size()) throw FormatError("trailing characters in tableau text: '" + text + "'");
    return from_packed(img);
}

CliffordTableau CliffordTableau::hadamard(int site) {
    if (site != 0 && site != 1) throw ArgumentError("site must be 0 or 1");
    auto img = kIdentityImages;
    std::swap(img[2 * site], img[2 * site + 1]);  // X <-> Z on that site
    return from_packed(img);
}

CliffordTableau CliffordTableau::phase_gate(int site) {
    if (site != 0 && site != 1) throw ArgumentError("site must be 0 or 1");
    auto img = kIdentityImages;
    // S X S† = Y, S Z S† = Z.
    img[2 * site].xz = static_cast<uint8_t>(site == 0 ? 3 : 12);
    return from_packed(img);
}

CliffordTableau CliffordTableau::cnot(int control) {
    if (control != 0 && control != 1) throw ArgumentError("control must be 0 or 1");
    std::array<Packed, 4> img;
    if (control == 0) {
        img = {Packed{5, 0}, Packed{2, 0}, Packed{4, 0}, Packed{10, 0}};  // XX, ZI, IX, ZZ
    } else {
        img = {Packed{1, 0}, Packed{10, 0}, Packed{5, 0}, Packed{8, 0}};  // XI, ZZ, XX, IZ
    }
    return from_packed(img);
}

CliffordTableau CliffordTableau::swap_gate() {
    return from_packed({Packed{4, 0}, Packed{8, 0}, Packed{1, 0}, Packed{2, 0}});
}

PauliString conjugate_pauli(const CliffordTableau& t, const PauliString& p) {
    if (p.n_sites() != 2) throw ArgumentError("conjugate_pauli expects a 2-site Pauli");
    return unpack2(conj_packed(t.packed_images(), pack2(p)));
}

CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b) {
    std::array<Packed, 4> img;
    for (int k = 0; k < 4; ++k) img[k] = conj_packed(a.packed_images(), b.packed_images()[k]);
    CliffordTableau t = CliffordTableau::from_packed(img);
    return t;
}

CliffordTableau inverse(const CliffordTableau& t) {
    std::array<Packed, 4> img;
    for (int k = 0; k < 4; ++k) {
        bool found = false;
        for (int xz = 1; xz < 16 && !found; ++xz)
            for (int q = 0; q <= 2 && !found; q += 2) {
                Packed cand{static_cast<uint8_t>(xz), static_cast<uint8_t>(q)};
                Packed image = conj_packed(t.packed_images(), cand);
                if (image.xz == kIdentityImages[k].xz && image.q == kIdentityImages[k].q) {
                    img[k] = cand;
                    found = true;
                }
            }
        if (!found) throw InvalidTableauError("tableau has no inverse image for a generator");
    }
    return CliffordTableau::from_packed(img);
}

namespace {

void kron4_impl(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, Eigen::Index ra,
                Eigen::Index ca, Eigen::Index rb, Eigen::Index cb, Eigen::MatrixXcd& out) {
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
}

}  // namespace

Eigen::Matrix4cd tableau_to_unitary(const CliffordTableau& t) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(64, 16);
    Eigen::Matrix4cd eye = Eigen::Matrix4cd::Identity();
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix4cd a = pauli_dense(t.image(k));
        Eigen::Matrix4cd g = generator_dense(k);
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(16, 16);
        kron4_impl(eye, a, 4, 4, 4, 4, block);            // I ⊗ A: vec(A U)
        Eigen::MatrixXcd block2 = Eigen::MatrixXcd::Zero(16, 16);
        kron4_impl(g.transpose(), eye, 4, 4, 4, 4, block2);  // gᵀ ⊗ I: vec(U g)
        m.block(16 * k, 0, 16, 16) = block - block2;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(15) > 1e-8 || sv(14) < 1e-6)
        throw InvalidTableauError("image relations have no unique unitary solution");
    Eigen::VectorXcd v = svd.matrixV().col(15);
    Eigen::Matrix4cd u = Eigen::Map<Eigen::Matrix4cd>(v.data());
    cplx c = (u.adjoint() * u).trace() / 4.0;
    if (std::abs(c) < 1e-12) throw InvalidTableauError("degenerate unitary solution");
    u /= std::sqrt(std::abs(c));
    if ((u.adjoint() * u - Eigen::Matrix4cd::Identity()).norm() > 1e-8)
        throw InvalidTableauError("solution is not unitary");
    for (int k = 0; k < 4; ++k)
        if ((u * generator_dense(k) * u.adjoint() - pauli_dense(t.image(k))).norm() > 1e-8)
            throw InvalidTableauError("solution does not reproduce the tableau images");
    fix_matrix_phase(u);
    return u;
}

CliffordTableau tableau_from_unitary(const Eigen::Matrix4cd& u) {
    if ((u.adjoint() * u - Eigen::Matrix4cd::Identity()).norm() > 1e-8)
        throw InvalidTableauError("matrix is not unitary");
    std::array<Packed, 4> img;
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix4cd b = u * generator_dense(k) * u.adjoint();
        bool found = false;
        for (int xz = 1; xz < 16 && !found; ++xz) {
            Packed cand{static_cast<uint8_t>(xz), 0};
            Eigen::Matrix4cd p = pauli_dense(unpack2(cand));
            cplx coeff = (p.adjoint() * b).trace() / 4.0;
            if (std::abs(std::abs(coeff) - 1.0) < 1e-8) {
                if (std::abs(std::imag(coeff)) > 1e-8)
                    throw InvalidTableauError("conjugated Pauli has imaginary coefficient");
                cand.q = std::real(coeff) > 0 ? 0 : 2;
                if ((b - (std::real(coeff) > 0 ? 1.0 : -1.0) * p).norm() > 1e-8)
                    throw InvalidTableauError("matrix does not map Paulis to Paulis");
                img[k] = cand;
                found = true;
            }
        }
        if (!found) throw InvalidTableauError("matrix is not Clifford");
    }
    return CliffordTableau::from_packed(img);
}

GateSearchMode gate_search_mode_from_name(const std::string& name) {
    if (name == "full_group") return GateSearchMode::full_group;
    if (name == "local_representatives") return GateSearchMode::local_representatives;
    if (name == "identity_only") return GateSearchMode::identity_only;
    throw ArgumentError("unknown gate search mode: '" + name + "'");
}

std::string gate_search_mode_name(GateSearchMode m) {
    switch (m) {
        case GateSearchMode::full_group: return "full_group";
        case GateSearchMode::local_representatives: return "local_representatives";
        case GateSearchMode::identity_only: return "identity_only";
    }
    throw ArgumentError("bad gate search mode value");
}

namespace {

struct FullGroup {
    GateSet set;
    std::unordered_map<uint32_t, size_t> index;
};

const FullGroup& full_group() {
    static const FullGroup fg = [] {
        FullGroup out;
        std::vector<CliffordTableau> gens = {
            CliffordTableau::hadamard(0),  CliffordTableau::hadamard(1),
            CliffordTableau::phase_gate(0), CliffordTableau::phase_gate(1),
            CliffordTableau::cnot(0),      CliffordTableau::cnot(1),
        };
        std::vector<Eigen::Matrix4cd> gen_u;
        gen_u.reserve(gens.size());
        for (const auto& g : gens) gen_u.push_back(tableau_to_unitary(g));

        std::vector<CliffordTableau> elems{CliffordTableau()};
        std::vector<Eigen::Matrix4cd> mats{Eigen::Matrix4cd::Identity()};
        std::vector<bool> seen(1u << 20, false);
        seen[elems[0].key()] = true;
        std::deque<size_t> queue{0};
        while (!queue.empty()) {
            size_t cur = queue.front();
            queue.pop_front();
            for (size_t g = 0; g < gens.size(); ++g) {
                CliffordTableau next = compose(gens[g], elems[cur]);
                uint32_t k = next.key();
                if (seen[k]) continue;
                seen[k] = true;
                Eigen::Matrix4cd u = gen_u[g] * mats[cur];
                fix_matrix_phase(u);
                elems.push_back(next);
                mats.push_back(u);
                queue.push_back(elems.size() - 1);
            }
        }
        std::vector<size_t> order(elems.size());
        std::iota(order.begin(), order.end(), 0);
        std::vector<uint32_t> okey(elems.size());
        for (size_t i = 0; i < elems.size(); ++i) okey[i] = tableau_order_key(elems[i]);
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return okey[a] < okey[b]; });
        out.set.mode = GateSearchMode::full_group;
        out.set.tableaux.reserve(elems.size());
        out.set.unitaries.reserve(elems.size());
        for (size_t i : order) {
            out.index[elems[i].key()] = out.set.tableaux.size();
            out.set.tableaux.push_back(elems[i]);
            out.set.unitaries.push_back(mats[i]);
        }
        return out;
    }();
    return fg;
}

}  // namespace

const GateSet& enumerate_two_qubit_cliffords() { return full_group().set; }

GateSet reduce_by_local_equivalence(const GateSet& full) {
    if (full.mode != GateSearchMode::full_group || full.tableaux.empty())
        throw ArgumentError("reduce_by_local_equivalence expects the full group");
    const auto& singles = enumerate_single_qubit_cliffords();
    std::vector<CliffordTableau> locals;
    locals.reserve(singles.size() * singles.size());
    for (const auto& u : singles)
        for (const auto& v : singles) locals.push_back(tensor_local(u, v));

    std::vector<bool> visited(1u << 20, false);
    std::vector<CliffordTableau> reps;
    for (const auto& g : full.tableaux) {
        if (visited[g.key()]) continue;
        CliffordTableau best = g;
        for (const auto& l : locals) {
            CliffordTableau cand = compose(l, g);
            visited[cand.key()] = true;
            if (cand.key() < best.key()) best = cand;
        }
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end(), [](const CliffordTableau& a, const CliffordTableau& b) {
        return tableau_order_key(a) < tableau_order_key(b);
    });
    GateSet out;
    out.mode = GateSearchMode::local_representatives;
    out.tableaux = std::move(reps);
    out.unitaries.reserve(out.tableaux.size());
    const auto& fg = full_group();
    for (const auto& t : out.tableaux) out.unitaries.push_back(fg.set.unitaries[fg.index.at(t.key())]);
    return out;
}

const GateSet& gate_set(GateSearchMode mode) {
    switch (mode) {
        case GateSearchMode::full_group: return full_group().set;
        case GateSearchMode::local_representatives: {
            static const GateSet reps = reduce_by_local_equivalence(full_group().set);
            return reps;
        }
        case GateSearchMode::identity_only: {
            static const GateSet ident = [] {
                GateSet s;
                s.mode = GateSearchMode::identity_only;
                s.tableaux.push_back(CliffordTableau());
                s.unitaries.push_back(Eigen::Matrix4cd::Identity());
                return s;
            }();
            return ident;
        }
    }
    throw ArgumentError("bad gate search mode value");
}

uint32_t tableau_order_key(const CliffordTableau& t) {
    return (static_cast<uint32_t>(interaction_class(t)) << 20) | t.key();
}

InteractionClass interaction_class(const CliffordTableau& t) {
    static const uint8_t inputs[6] = {1, 3, 2, 4, 12, 8};  // X1, Y1, Z1, X2, Y2, Z2
    int n1 = 0;
    int same = 0, swapped = 0;
    for (int i = 0; i < 6; ++i) {
        Packed p{inputs[i], 0};
        Packed im = conj_packed(t.packed_images(), p);
        bool in_left = i < 3;
        bool out_left = (im.xz & 3) != 0;
        bool out_right = ((im.xz >> 2) & 3) != 0;
        if (out_left && out_right) continue;
        ++n1;
        if (in_left == out_left) ++same;
        else ++swapped;
    }
    if (n1 == 6 && same == 6) return InteractionClass::local_class;
    if (n1 == 6 && swapped == 6) return InteractionClass::swap_class;
    if (n1 == 2 && same == 2) return InteractionClass::cnot_class;
    if (n1 == 2 && swapped == 2) return InteractionClass::iswap_class;
    throw Error("unclassifiable tableau; not a valid two-qubit Clifford?");
}

SingleQubitClifford::SingleQubitClifford() : lx_(1), sx_(0), lz_(2), sz_(0) {}

SingleQubitClifford SingleQubitClifford::from_images(const PauliString& img_x,
                                                     const PauliString& img_z) {
    if (img_x.n_sites() != 1 || img_z.n_sites() != 1)
        throw ArgumentError("single-qubit images must be 1-site Paulis");
    if (!img_x.is_hermitian() || !img_z.is_hermitian())
        throw InvalidTableauError("single-qubit image has imaginary phase");
    if (img_x.at(0) == Pauli::I || img_z.at(0) == Pauli::I || img_x.at(0) == img_z.at(0))
        throw InvalidTableauError("single-qubit images must be distinct non-identity letters");
    SingleQubitClifford out;
    out.lx_ = static_cast<uint8_t>(code_of(img_x.at(0)));
    out.sx_ = img_x.sign() < 0;
    out.lz_ = static_cast<uint8_t>(code_of(img_z.at(0)));
    out.sz_ = img_z.sign() < 0;
    return out;
}

PauliString SingleQubitClifford::image_x() const {
    PauliString s(1);
    s.set(0, pauli_from_code(lx_));
    s.set_quarter_turns(sx_ ? 2 : 0);
    return s;
}

PauliString SingleQubitClifford::image_z() const {
    PauliString s(1);
    s.set(0, pauli_from_code(lz_));
    s.set_quarter_turns(sz_ ? 2 : 0);
    return s;
}

std::pair<Pauli, int> SingleQubitClifford::conj_letter(Pauli p) const {
    switch (p) {
        case Pauli::I: return {Pauli::I, 1};
        case Pauli::X: return {pauli_from_code(lx_), sx_ ? -1 : 1};
        case Pauli::Z: return {pauli_from_code(lz_), sz_ ? -1 : 1};
        case Pauli::Y: {
            // Y = i X Z, so image = i * image(X) * image(Z).
            int letter = lx_ ^ lz_;
            int q = (1 + 2 * (sx_ + sz_) + kTurns[lx_][lz_]) & 3;
            return {pauli_from_code(letter), q == 2 ? -1 : 1};
        }
    }
    throw ArgumentError("bad Pauli enum value");
}

bool SingleQubitClifford::is_identity() const {
    return lx_ == 1 && lz_ == 2 && sx_ == 0 && sz_ == 0;
}

uint32_t SingleQubitClifford::key() const {
    return static_cast<uint32_t>(((sx_ << 2 | lx_) << 3) | (sz_ << 2 | lz_));
}

std::string SingleQubitClifford::encode() const {
    std::string out = "X->";
    out += sx_ ? '-' : '+';
    out += pauli_char(pauli_from_code(lx_));
    out += ";Z->";
    out += sz_ ? '-' : '+';
    out += pauli_char(pauli_from_code(lz_));
    return out;
}

const std::vector<SingleQubitClifford>& enumerate_single_qubit_cliffords() {
    static const std::vector<SingleQubitClifford> all = [] {
        std::vector<SingleQubitClifford> out;
        for (int lx = 1; lx <= 3; ++lx)
            for (int sx = 0; sx <= 1; ++sx)
                for (int lz = 1; lz <= 3; ++lz) {
                    if (lz == lx) continue;
                    for (int sz = 0; sz <= 1; ++sz) {
                        PauliString ix(1), iz(1);
                        ix.set(0, pauli_from_code(lx));
                        ix.set_quarter_turns(sx ? 2 : 0);
                        iz.set(0, pauli_from_code(lz));
                        iz.set_quarter_turns(sz ? 2 : 0);
                        out.push_back(SingleQubitClifford::from_images(ix, iz));
                    }
                }
        std::sort(out.begin(), out.end(), [](const SingleQubitClifford& a,
                                             const SingleQubitClifford& b) {
            return a.key() < b.key();
        });
        return out;
    }();
    return all;
}

CliffordTableau tensor_local(const SingleQubitClifford& u, const SingleQubitClifford& v) {
    std::array<Packed, 4> img;
    img[0] = Packed{u.lx_, static_cast<uint8_t>(u.sx_ ? 2 : 0)};
    img[1] = Packed{u.lz_, static_cast<uint8_t>(u.sz_ ? 2 : 0)};
    img[2] = Packed{static_cast<uint8_t>(v.lx_ << 2), static_cast<uint8_t>(v.sx_ ? 2 : 0)};
    img[3] = Packed{static_cast<uint8_t>(v.lz_ << 2), static_cast<uint8_t>(v.sz_ ? 2 : 0)};
    return CliffordTableau::from_packed(img);
}

}  // namespace camps
