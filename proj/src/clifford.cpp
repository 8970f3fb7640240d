#include "opspace/clifford.hpp"

#include "opspace/dense.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <stdexcept>

namespace opspace {

namespace {

// Symplectic product on (x|z) mask pairs; 1 iff the strings anticommute.
struct XZ {
    uint64_t x = 0, z = 0;
    XZ operator^(const XZ& o) const { return XZ{x ^ o.x, z ^ o.z}; }
    bool zero() const { return x == 0 && z == 0; }
};

inline int sp(const XZ& u, const XZ& v) {
    return (std::popcount(u.x & v.z) + std::popcount(u.z & v.x)) & 1;
}

}  // namespace

CliffordTableau::CliffordTableau(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 63)
        throw std::invalid_argument("CliffordTableau: n_qubits out of range");
    rows_.reserve(2 * n_);
    for (int q = 0; q < n_; ++q) rows_.push_back(PauliString::single(n_, q, 'X'));
    for (int q = 0; q < n_; ++q) rows_.push_back(PauliString::single(n_, q, 'Z'));
}

CliffordTableau tableau_from_rows(int n, std::vector<PauliString> rows) {
    CliffordTableau c(n);
    if (rows.size() != static_cast<size_t>(2 * n))
        throw std::invalid_argument("tableau_from_rows: need 2N rows");
    for (const auto& r : rows) {
        if (r.n != n || r.phase_exp % 2 != 0)
            throw std::invalid_argument("tableau_from_rows: rows must be Hermitian N-qubit strings");
    }
    c.rows_ = std::move(rows);
    if (!c.satisfies_symplectic())
        throw std::invalid_argument("tableau_from_rows: rows are not symplectic");
    return c;
}

CliffordTableau CliffordTableau::hadamard(int n, int site) {
    CliffordTableau c(n);
    std::swap(c.rows_[site], c.rows_[n + site]);  // X <-> Z
    return c;
}

CliffordTableau CliffordTableau::phase_gate(int n, int site) {
    CliffordTableau c(n);
    // S^dag X S = -Y, S^dag Z S = Z.
    c.rows_[site] = PauliString::single(n, site, 'Y');
    c.rows_[site].phase_exp = 2;
    return c;
}

CliffordTableau CliffordTableau::cnot(int n, int control, int target) {
    if (control == target) throw std::invalid_argument("cnot: control == target");
    CliffordTableau c(n);
    c.rows_[control] = pauli_mul(PauliString::single(n, control, 'X'),
                                 PauliString::single(n, target, 'X'));
    c.rows_[n + target] = pauli_mul(PauliString::single(n, control, 'Z'),
                                    PauliString::single(n, target, 'Z'));
    return c;
}

std::vector<std::vector<int>> CliffordTableau::symplectic_rows() const {
    std::vector<std::vector<int>> m(2 * n_, std::vector<int>(2 * n_, 0));
    for (int k = 0; k < 2 * n_; ++k)
        for (int j = 0; j < n_; ++j) {
            m[k][j] = static_cast<int>((rows_[k].x >> j) & 1);
            m[k][n_ + j] = static_cast<int>((rows_[k].z >> j) & 1);
        }
    return m;
}

std::vector<int> CliffordTableau::phase_bits() const {
    std::vector<int> bits(2 * n_);
    for (int k = 0; k < 2 * n_; ++k) bits[k] = rows_[k].phase_exp / 2;
    return bits;
}

bool CliffordTableau::satisfies_symplectic() const {
    // M Omega M^T = Omega <=> commutation structure of generator images.
    for (int k = 0; k < 2 * n_; ++k)
        for (int l = k; l < 2 * n_; ++l) {
            XZ u{rows_[k].x, rows_[k].z}, v{rows_[l].x, rows_[l].z};
            int expect = (l == k + n_) ? 1 : 0;
            if (sp(u, v) != expect) return false;
        }
    return true;
}

PauliString tableau_conjugate(const CliffordTableau& c, const PauliString& p) {
    if (p.n != c.n_qubits()) throw std::invalid_argument("tableau_conjugate: mismatched sizes");
    // P = i^(phase + #Y) * prod_q X_q^{x_q} * prod_q Z_q^{z_q}; conjugation is
    // a homomorphism, so multiply the generator images in the same order.
    int phi = (p.phase_exp + p.weight_y()) % 4;
    PauliString acc = PauliString::identity(p.n);
    for (uint64_t m = p.x; m;) {
        int q = std::countr_zero(m);
        m &= m - 1;
        acc = pauli_mul(acc, c.image_x(q));
    }
    for (uint64_t m = p.z; m;) {
        int q = std::countr_zero(m);
        m &= m - 1;
        acc = pauli_mul(acc, c.image_z(q));
    }
    acc.phase_exp = (acc.phase_exp + phi) % 4;
    return acc;
}

CliffordTableau tableau_compose(const CliffordTableau& c1, const CliffordTableau& c2) {
    if (c1.n_qubits() != c2.n_qubits())
        throw std::invalid_argument("tableau_compose: mismatched sizes");
    int n = c1.n_qubits();
    std::vector<PauliString> rows;
    rows.reserve(2 * n);
    for (int k = 0; k < 2 * n; ++k) rows.push_back(tableau_conjugate(c1, c2.row(k)));
    return tableau_from_rows(n, std::move(rows));
}

CliffordTableau tableau_inverse(const CliffordTableau& c) {
    int n = c.n_qubits();
    int nn = 2 * n;
    // Symplectic inverse Minv = Omega M^T Omega: Minv[i][j] = M[swap(j)][swap(i)].
    auto bit_of = [&](const PauliString& r, int col) -> uint64_t {
        return col < n ? (r.x >> col) & 1 : (r.z >> (col - n)) & 1;
    };
    auto swp = [&](int i) { return (i + n) % nn; };
    std::vector<PauliString> rows(nn, PauliString::identity(n));
    for (int i = 0; i < nn; ++i) {
        uint64_t x = 0, z = 0;
        for (int j = 0; j < nn; ++j) {
            uint64_t b = bit_of(c.row(swp(j)), swp(i));
            if (!b) continue;
            if (j < n)
                x |= 1ULL << j;
            else
                z |= 1ULL << (j - n);
        }
        rows[i] = PauliString::from_xz(n, x, z, 0);
    }
    // Fix signs so that conjugating each candidate row by c recovers the bare
    // generator with a + sign.
    CliffordTableau inv = tableau_from_rows(n, rows);
    std::vector<PauliString> fixed;
    fixed.reserve(nn);
    for (int k = 0; k < nn; ++k) {
        PauliString cand = inv.row(k);
        PauliString back = tableau_conjugate(c, cand);
        PauliString gen = k < n ? PauliString::single(n, k, 'X') : PauliString::single(n, k - n, 'Z');
        if (back.x != gen.x || back.z != gen.z)
            throw std::logic_error("tableau_inverse: symplectic inverse inconsistent");
        cand.phase_exp = (cand.phase_exp + back.phase_exp) % 4;
        fixed.push_back(cand);
    }
    return tableau_from_rows(n, std::move(fixed));
}

CliffordTableau sample_uniform_clifford(int n_qubits, Rng& rng) {
    if (n_qubits < 1) throw std::invalid_argument("sample_uniform_clifford: n_qubits < 1");
    int n = n_qubits;
    std::vector<XZ> basis;
    basis.reserve(2 * n);
    for (int q = 0; q < n; ++q) basis.push_back(XZ{1ULL << q, 0});
    for (int q = 0; q < n; ++q) basis.push_back(XZ{0, 1ULL << q});

    std::vector<XZ> img_x(n), img_z(n);
    for (int k = 0; k < n; ++k) {
        size_t dim = basis.size();
        // a: uniform nonzero element of the current symplectic subspace.
        XZ a;
        do {
            a = XZ{};
            for (size_t i = 0; i < dim; ++i)
                if (rng.bit()) a = a ^ basis[i];
        } while (a.zero());
        // b: uniform over {v : sp(a,v) = 1} = w0 + ker sp(a,.).
        std::vector<XZ> kernel;
        kernel.reserve(dim - 1);
        XZ w0;
        bool have_w0 = false;
        for (const XZ& w : basis) {
            if (sp(a, w) == 0) {
                kernel.push_back(w);
            } else if (!have_w0) {
                w0 = w;
                have_w0 = true;
            } else {
                kernel.push_back(w ^ w0);
            }
        }
        if (!have_w0) throw std::logic_error("sample_uniform_clifford: degenerate form");
        XZ b = w0;
        for (const XZ& w : kernel)
            if (rng.bit()) b = b ^ w;
        img_x[k] = a;
        img_z[k] = b;
        // Restrict to the symplectic complement of span{a, b}.
        std::vector<XZ> next;
        next.reserve(kernel.size() - 1);
        XZ k0;
        bool have_k0 = false;
        for (const XZ& w : kernel) {
            if (!have_k0 && sp(b, w) == 1) {
                k0 = w;
                have_k0 = true;
            }
        }
        for (const XZ& w : kernel) {
            if (have_k0 && w.x == k0.x && w.z == k0.z) continue;
            next.push_back(sp(b, w) == 1 ? (w ^ k0) : w);
        }
        basis = std::move(next);
    }

    std::vector<PauliString> rows;
    rows.reserve(2 * n);
    for (int k = 0; k < n; ++k)
        rows.push_back(PauliString::from_xz(n, img_x[k].x, img_x[k].z, rng.bit() ? 2 : 0));
    for (int k = 0; k < n; ++k)
        rows.push_back(PauliString::from_xz(n, img_z[k].x, img_z[k].z, rng.bit() ? 2 : 0));
    return tableau_from_rows(n, std::move(rows));
}

MatrixC tableau_to_dense(const CliffordTableau& c) {
    int n = c.n_qubits();
    if (n > kDenseQubitLimit) throw std::invalid_argument("tableau_to_dense: n over dense limit");
    int64_t dim = int64_t{1} << n;
    // |U>> is the unique joint +1 eigenvector of the 2N commuting stabilizers
    // G_k (x) R_k^T of the Choi state; project a fixed pseudo-random start
    // through all of them. Row-major vec: (G (x) R^T) V = G V R.
    for (uint64_t attempt = 0; attempt < 8; ++attempt) {
        Rng start(0x5EEDDA7AULL + attempt);
        MatrixC v(dim, dim);
        for (int64_t i = 0; i < dim; ++i)
            for (int64_t j = 0; j < dim; ++j) v(i, j) = Complex(start.normal(), start.normal());
        for (int k = 0; k < 2 * n; ++k) {
            PauliString gen =
                k < n ? PauliString::single(n, k, 'X') : PauliString::single(n, k - n, 'Z');
            v = 0.5 * (v + pauli_left_mul(gen, pauli_right_mul(v, c.row(k))));
        }
        double norm = v.norm();
        if (norm < 1e-6) continue;  // start was (numerically) orthogonal; rare
        MatrixC u = v * (std::sqrt(static_cast<double>(dim)) / norm);
        for (int64_t col = 0; col < dim; ++col) {
            bool done = false;
            for (int64_t row = 0; row < dim; ++row) {
                Complex e = u(row, col);
                if (std::abs(e) > 1e-8) {
                    u *= std::conj(e) / std::abs(e);
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
        return u;
    }
    throw std::logic_error("tableau_to_dense: projection failed");
}

Circuit tableau_to_circuit(const CliffordTableau& c) {
    int n = c.n_qubits();
    CliffordTableau w = c;
    struct Applied {
        GateKind kind;
        int a, b;
    };
    std::vector<Applied> applied;
    // Right-multiply by a gate: every row r becomes g^dag r g.
    auto apply = [&](GateKind kind, int qa, int qb = -1) {
        CliffordTableau g = kind == GateKind::H   ? CliffordTableau::hadamard(n, qa)
                            : kind == GateKind::S ? CliffordTableau::phase_gate(n, qa)
                                                  : CliffordTableau::cnot(n, qa, qb);
        w = tableau_compose(g, w);
        applied.push_back({kind, qa, qb});
    };
    auto xbit = [](const PauliString& p, int j) { return (p.x >> j) & 1ULL; };
    auto zbit = [](const PauliString& p, int j) { return (p.z >> j) & 1ULL; };

    for (int q = 0; q < n; ++q) {
        // Bring image_x(q) to +X_q. Its support is confined to sites >= q
        // because it commutes with the already-fixed generators.
        {
            int pivot = -1;
            for (int j = q; j < n && pivot < 0; ++j)
                if (xbit(w.image_x(q), j)) pivot = j;
            if (pivot < 0) {
                for (int j = q; j < n && pivot < 0; ++j)
                    if (zbit(w.image_x(q), j)) {
                        apply(GateKind::H, j);
                        pivot = j;
                    }
            }
            if (pivot < 0) throw std::logic_error("tableau_to_circuit: empty generator image");
            if (pivot != q) {  // SWAP via three CNOTs
                apply(GateKind::CX, q, pivot);
                apply(GateKind::CX, pivot, q);
                apply(GateKind::CX, q, pivot);
            }
            for (int k = q + 1; k < n; ++k)
                if (xbit(w.image_x(q), k)) apply(GateKind::CX, q, k);
            if (zbit(w.image_x(q), q)) apply(GateKind::S, q);  // Y -> X
            for (int k = q + 1; k < n; ++k)
                if (zbit(w.image_x(q), k)) {
                    apply(GateKind::H, k);
                    apply(GateKind::CX, q, k);
                }
        }
        // Bring image_z(q) to +Z_q inside an H_q sandwich, which keeps X_q
        // intact as Z_q throughout.
        apply(GateKind::H, q);
        {
            for (int k = q + 1; k < n; ++k)
                if (xbit(w.image_z(q), k)) apply(GateKind::CX, q, k);
            if (zbit(w.image_z(q), q)) apply(GateKind::S, q);
            for (int k = q + 1; k < n; ++k)
                if (zbit(w.image_z(q), k)) {
                    apply(GateKind::H, k);
                    apply(GateKind::CX, q, k);
                }
        }
        apply(GateKind::H, q);
        if (w.image_x(q).phase_exp == 2) {  // Z_q flips the X image sign
            apply(GateKind::S, q);
            apply(GateKind::S, q);
        }
        if (w.image_z(q).phase_exp == 2) {  // X_q flips the Z image sign
            apply(GateKind::H, q);
            apply(GateKind::S, q);
            apply(GateKind::S, q);
            apply(GateKind::H, q);
        }
    }
    if (!(w == CliffordTableau::identity(n)))
        throw std::logic_error("tableau_to_circuit: sweep did not reach identity");
    // U * g_1 * ... * g_m = phase, so U = g_m^dag ... g_1^dag: emit daggered
    // gates in application order (S^dag as SSS).
    Circuit out;
    out.n_qubits = n;
    for (const Applied& g : applied) {
        switch (g.kind) {
            case GateKind::H: out.h(g.a); break;
            case GateKind::CX: out.cx(g.a, g.b); break;
            case GateKind::S: out.s(g.a); out.s(g.a); out.s(g.a); break;
            default: throw std::logic_error("tableau_to_circuit: unexpected gate");
        }
    }
    return out;
}

nlohmann::json tableau_to_json(const CliffordTableau& c) {
    nlohmann::json j;
    j["n"] = c.n_qubits();
    j["symplectic"] = c.symplectic_rows();
    j["phase"] = c.phase_bits();
    return j;
}

CliffordTableau tableau_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    auto sym = j.at("symplectic").get<std::vector<std::vector<int>>>();
    auto phase = j.at("phase").get<std::vector<int>>();
    if (sym.size() != static_cast<size_t>(2 * n) || phase.size() != static_cast<size_t>(2 * n))
        throw std::invalid_argument("tableau_from_json: wrong row count");
    std::vector<PauliString> rows;
    rows.reserve(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        if (sym[k].size() != static_cast<size_t>(2 * n))
            throw std::invalid_argument("tableau_from_json: wrong row length");
        uint64_t x = 0, z = 0;
        for (int q = 0; q < n; ++q) {
            if (sym[k][q]) x |= 1ULL << q;
            if (sym[k][n + q]) z |= 1ULL << q;
        }
        if (phase[k] != 0 && phase[k] != 1)
            throw std::invalid_argument("tableau_from_json: phase bits must be 0/1");
        rows.push_back(PauliString::from_xz(n, x, z, phase[k] ? 2 : 0));
    }
    return tableau_from_rows(n, std::move(rows));
}

}  // namespace opspace
