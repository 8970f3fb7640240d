#include "opspace/replica_oracle.hpp"

#include "opspace/clifford.hpp"
#include "opspace/sym4.hpp"

#include <stdexcept>

namespace opspace {

namespace {

inline int64_t digit(int64_t index, int r, int64_t d) {
    for (int k = 0; k < r; ++k) index /= d;
    return index % d;
}

}  // namespace

MatrixC t_perm_dense(int sigma, int64_t d) {
    const S4Tables& t = S4Tables::get();
    if (sigma < 0 || sigma >= 24) throw std::invalid_argument("t_perm_dense: bad permutation id");
    int64_t dim = d * d * d * d;
    const auto& inv = t.perm[t.inverse[sigma]];
    MatrixC m = MatrixC::Zero(dim, dim);
    for (int64_t i = 0; i < dim; ++i) {
        int64_t out = 0, scale = 1;
        for (int r = 0; r < 4; ++r) {
            out += digit(i, inv[r], d) * scale;
            scale *= d;
        }
        m(out, i) = 1.0;
    }
    return m;
}

MatrixC lambda_plus_dense(int n_qubits) {
    if (n_qubits > 2) throw std::invalid_argument("lambda_plus_dense: N <= 2 only (16^N cost)");
    int64_t d = int64_t{1} << n_qubits;
    int64_t dim = d * d * d * d;
    MatrixC sum = MatrixC::Zero(dim, dim);
    for (uint64_t z = 0; z < (1ULL << n_qubits); ++z)
        for (uint64_t x = 0; x < (1ULL << n_qubits); ++x)
            sum += kron4(pauli_to_dense(PauliString::from_xz(n_qubits, x, z, 0)));
    return sum / static_cast<double>(d * d);
}

MatrixC kron4(const MatrixC& a) {
    int64_t d = a.rows();
    int64_t dim = d * d * d * d;
    MatrixC m(dim, dim);
    for (int64_t i = 0; i < dim; ++i)
        for (int64_t j = 0; j < dim; ++j) {
            Complex v = 1.0;
            for (int r = 0; r < 4; ++r) v *= a(digit(i, r, d), digit(j, r, d));
            m(i, j) = v;
        }
    return m;
}

MatrixC t_prime_dense(const Bipartition& b) {
    if (b.n > 2) throw std::invalid_argument("t_prime_dense: N <= 2 only");
    if (!b.nontrivial()) throw std::invalid_argument("t_prime_dense: trivial bipartition");
    const S4Tables& t = S4Tables::get();
    const auto& pa = t.perm[t.pair_ab];  // involution (12)(34)
    const auto& pb = t.perm[t.pair_ad];  // involution (14)(23)
    int64_t d = int64_t{1} << b.n;
    int64_t dim = d * d * d * d;
    uint64_t amask = b.a_mask;
    uint64_t bmask = ~amask & ((1ULL << b.n) - 1);
    MatrixC m = MatrixC::Zero(dim, dim);
    for (int64_t i = 0; i < dim; ++i) {
        int64_t out = 0, scale = 1;
        for (int r = 0; r < 4; ++r) {
            uint64_t da = digit(i, pa[r], d) & amask;
            uint64_t db = digit(i, pb[r], d) & bmask;
            out += static_cast<int64_t>(da | db) * scale;
            scale *= d;
        }
        m(out, i) = 1.0;
    }
    return m;
}

std::vector<CliffordTableau> enumerate_single_qubit_cliffords() {
    std::vector<CliffordTableau> out;
    // Nonzero GF(2)^2 vectors as (x,z) letters.
    const std::array<std::pair<uint64_t, uint64_t>, 3> letters = {
        std::pair<uint64_t, uint64_t>{1, 0}, {0, 1}, {1, 1}};
    for (auto [xx, xz] : letters)
        for (auto [zx, zz] : letters) {
            if ((xx & zz) == (xz & zx)) continue;  // need symplectic product 1
            for (int sx = 0; sx < 2; ++sx)
                for (int sz = 0; sz < 2; ++sz) {
                    std::vector<PauliString> rows = {
                        PauliString::from_xz(1, xx, xz, sx ? 2 : 0),
                        PauliString::from_xz(1, zx, zz, sz ? 2 : 0)};
                    out.push_back(tableau_from_rows(1, std::move(rows)));
                }
        }
    return out;
}

}  // namespace opspace
