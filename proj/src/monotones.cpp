#include "opspace/monotones.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opspace {

namespace {

int qubits_of(const MatrixC& op, const char* who) {
    int64_t dim = op.rows();
    if (dim != op.cols() || dim == 0 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument(std::string(who) + ": dimension not a power of two");
    return std::countr_zero(static_cast<uint64_t>(dim));
}

// Compress the bits of `index` selected by `sites` into a dense integer.
inline int64_t gather_bits(int64_t index, const std::vector<int>& sites) {
    int64_t out = 0;
    for (size_t k = 0; k < sites.size(); ++k) out |= ((index >> sites[k]) & 1) << k;
    return out;
}

}  // namespace

Bipartition Bipartition::from_sites(int n_qubits, const std::vector<int>& sites) {
    Bipartition b;
    b.n = n_qubits;
    b.a_mask = 0;
    for (int q : sites) {
        if (q < 0 || q >= n_qubits) throw std::invalid_argument("Bipartition: site out of range");
        b.a_mask |= 1ULL << q;
    }
    return b;
}

int Bipartition::n_a() const { return std::popcount(a_mask); }

std::vector<int> Bipartition::a_sites() const {
    std::vector<int> s;
    for (int q = 0; q < n; ++q)
        if ((a_mask >> q) & 1) s.push_back(q);
    return s;
}

std::vector<int> Bipartition::b_sites() const {
    std::vector<int> s;
    for (int q = 0; q < n; ++q)
        if (!((a_mask >> q) & 1)) s.push_back(q);
    return s;
}

std::vector<Bipartition> contiguous_cuts(int n_qubits) {
    std::vector<Bipartition> out;
    for (int k = 0; k + 1 < n_qubits; ++k) {
        Bipartition b;
        b.n = n_qubits;
        b.a_mask = (1ULL << (k + 1)) - 1;
        out.push_back(b);
    }
    return out;
}

double renyi_entropy_bits(const std::vector<double>& probs, RenyiIndex alpha, double support_eps) {
    if (alpha.infinite) {
        double m = 0.0;
        for (double p : probs) m = std::max(m, p);
        if (m <= 0.0) throw std::invalid_argument("renyi_entropy_bits: empty distribution");
        return -std::log2(m);
    }
    double a = alpha.alpha;
    if (a < 0.0) throw std::invalid_argument("renyi_entropy_bits: alpha < 0");
    if (a == 0.0) {
        int64_t support = 0;
        for (double p : probs)
            if (p > support_eps) ++support;
        return std::log2(static_cast<double>(std::max<int64_t>(support, 1)));
    }
    if (std::abs(a - 1.0) < 1e-12) {
        double h = 0.0;
        for (double p : probs)
            if (p > 0.0) h -= p * std::log2(p);
        return h;
    }
    double s = 0.0;
    for (double p : probs)
        if (p > 0.0) s += std::pow(p, a);
    return std::log2(s) / (1.0 - a);
}

std::vector<double> reduced_choi_spectrum(const ChoiVector& v, const Bipartition& b) {
    if (b.n != v.n) throw std::invalid_argument("reduced_choi_spectrum: size mismatch");
    if (!b.nontrivial()) throw std::invalid_argument("reduced_choi_spectrum: trivial bipartition");
    int64_t dim = v.dim();
    auto a_sites = b.a_sites();
    auto b_sites = b.b_sites();
    int64_t da = b.d_a(), db = b.d_b();
    // Doubled-space regrouping: row (A_out, A_in), column (Abar_out, Abar_in).
    MatrixC m(da * da, db * db);
    for (int64_t i = 0; i < dim; ++i) {
        int64_t ia = gather_bits(i, a_sites), ib = gather_bits(i, b_sites);
        for (int64_t j = 0; j < dim; ++j) {
            int64_t ja = gather_bits(j, a_sites), jb = gather_bits(j, b_sites);
            m(ia * da + ja, ib * db + jb) = v.amps(i * dim + j);
        }
    }
    // JacobiSVD: BDCSVD mishandles the highly degenerate spectra these
    // matrices routinely have (many exactly equal singular values).
    Eigen::JacobiSVD<MatrixC> svd(m);
    auto sv = svd.singularValues();
    std::vector<double> weights(sv.size());
    double sum = 0.0;
    for (int64_t k = 0; k < sv.size(); ++k) {
        weights[k] = sv(k) * sv(k);
        sum += weights[k];
    }
    std::sort(weights.begin(), weights.end(), std::greater<>());
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::logic_error("reduced_choi_spectrum: weights sum to " + std::to_string(sum));
    return weights;
}

double loe(const MatrixC& op, const Bipartition& b, RenyiIndex alpha) {
    auto weights = reduced_choi_spectrum(choi_vector(op), b);
    return renyi_entropy_bits(weights, alpha);
}

double op_purity(const ChoiVector& v, const Bipartition& b) {
    if (b.n != v.n) throw std::invalid_argument("op_purity: size mismatch");
    if (!b.nontrivial()) throw std::invalid_argument("op_purity: trivial bipartition");
    int64_t dim = v.dim();
    auto a_sites = b.a_sites();
    auto b_sites = b.b_sites();
    int64_t da = b.d_a(), db = b.d_b();
    MatrixC m(da * da, db * db);
    for (int64_t i = 0; i < dim; ++i) {
        int64_t ia = gather_bits(i, a_sites), ib = gather_bits(i, b_sites);
        for (int64_t j = 0; j < dim; ++j) {
            int64_t ja = gather_bits(j, a_sites), jb = gather_bits(j, b_sites);
            m(ia * da + ja, ib * db + jb) = v.amps(i * dim + j);
        }
    }
    // purity = sum of fourth powers of singular values = ||M M^dag||_F^2
    if (m.rows() <= m.cols()) {
        MatrixC g = m * m.adjoint();
        return g.squaredNorm();
    }
    MatrixC g = m.adjoint() * m;
    return g.squaredNorm();
}

double op_purity(const MatrixC& op, const Bipartition& b) {
    return op_purity(choi_vector(op), b);
}

double ose(const MatrixC& op, RenyiIndex alpha, std::string* warning) {
    PauliSpectrum s = pauli_transform(op);
    double total = s.sum_sq();
    if (total < 1e-14) throw std::invalid_argument("ose: zero operator");
    VectorR p = s.probabilities();
    if (std::abs(total - 1.0) > 1e-8) {
        if (warning)
            *warning = "ose: input not unit Pauli norm (sum = " + std::to_string(total) +
                       "), normalized";
        p /= total;
    }
    std::vector<double> probs(p.data(), p.data() + p.size());
    return renyi_entropy_bits(probs, alpha);
}

NullityResult unitary_nullity(const MatrixC& u, double eps) {
    int n = qubits_of(u, "unitary_nullity");
    if (n > 5) throw std::invalid_argument("unitary_nullity: N > 5 not supported (cost 16^N)");
    if (!is_unitary(u)) throw std::invalid_argument("unitary_nullity: input not unitary");
    NullityResult r;
    r.tolerance = eps;
    int64_t count = 0;
    for (uint64_t z = 0; z < (1ULL << n); ++z) {
        for (uint64_t x = 0; x < (1ULL << n); ++x) {
            PauliString p2 = PauliString::from_xz(n, x, z, 0);
            MatrixC conj = heisenberg_conjugate(u, pauli_to_dense(p2));
            PauliSpectrum s = pauli_transform(conj);
            double best = 0.0;
            for (int64_t k = 0; k < s.coeffs.size(); ++k)
                best = std::max(best, std::abs(s.coeffs(k)));
            if (best >= 1.0 - eps) ++count;
        }
    }
    r.stab_count = count;
    r.count_is_power_of_two = count > 0 && (count & (count - 1)) == 0;
    double log2c = std::log2(static_cast<double>(count));
    r.nu = 2 * n - static_cast<int>(std::lround(log2c));
    if (!r.count_is_power_of_two)
        r.diagnostics = "stabilizer count " + std::to_string(count) +
                        " is not a power of two; tolerance " + std::to_string(eps) +
                        " may be mis-set or U is numerically borderline";
    return r;
}

int t_count(const Circuit& c) {
    int count = 0;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::H:
            case GateKind::S:
            case GateKind::CX: break;
            case GateKind::T: ++count; break;
            case GateKind::RZ: {
                double r = std::remainder(g.theta, std::numbers::pi / 2);
                if (std::abs(r) > 1e-12)
                    throw std::invalid_argument(
                        "t_count: RZ angle is not Clifford; witness undefined");
                break;
            }
            case GateKind::Dense:
                throw std::invalid_argument("t_count: DENSE gate; witness undefined");
        }
    }
    return count;
}

double operator_entanglement_u(const MatrixC& u, const Bipartition& b, RenyiIndex alpha) {
    return loe(u, b, alpha);
}

namespace {

// State entanglement of |psi> across b (single space, not doubled).
double state_entanglement(const VectorC& psi, const Bipartition& b, RenyiIndex alpha) {
    auto a_sites = b.a_sites();
    auto b_sites = b.b_sites();
    MatrixC m(b.d_a(), b.d_b());
    for (int64_t i = 0; i < psi.size(); ++i)
        m(gather_bits(i, a_sites), gather_bits(i, b_sites)) = psi(i);
    Eigen::JacobiSVD<MatrixC> svd(m);
    auto sv = svd.singularValues();
    std::vector<double> weights(sv.size());
    for (int64_t k = 0; k < sv.size(); ++k) weights[k] = sv(k) * sv(k);
    return renyi_entropy_bits(weights, alpha);
}

}  // namespace

Estimate entangling_power_mc(const MatrixC& u, const Bipartition& b, RenyiIndex alpha,
                             int64_t n_samples, uint64_t seed) {
    int n = qubits_of(u, "entangling_power_mc");
    if (b.n != n) throw std::invalid_argument("entangling_power_mc: size mismatch");
    if (!b.nontrivial()) throw std::invalid_argument("entangling_power_mc: trivial bipartition");
    int64_t dim = int64_t{1} << n;
    std::vector<double> values(n_samples);
    auto a_sites = b.a_sites();
    auto b_sites = b.b_sites();
    for (int64_t s = 0; s < n_samples; ++s) {
        Rng rng(stream_key(seed, static_cast<uint64_t>(s)));
        MatrixC ua = sample_haar_unitary(b.d_a(), rng);
        MatrixC ub = sample_haar_unitary(b.d_b(), rng);
        VectorC psi = VectorC::Zero(dim);
        // (U_A (x) U_Abar)|0..0> has amplitudes ua(iA,0) * ub(iB,0).
        for (int64_t i = 0; i < dim; ++i)
            psi(i) = ua(gather_bits(i, a_sites), 0) * ub(gather_bits(i, b_sites), 0);
        psi = u * psi;
        values[static_cast<size_t>(s)] = state_entanglement(psi, b, alpha);
    }
    return make_estimate(values, seed);
}

MatrixC swap_unitary(const Bipartition& b) {
    if (b.n_a() != b.n_b())
        throw std::invalid_argument("swap_unitary: bipartition sides differ");
    auto a_sites = b.a_sites();
    auto b_sites = b.b_sites();
    int64_t dim = int64_t{1} << b.n;
    MatrixC m = MatrixC::Zero(dim, dim);
    for (int64_t j = 0; j < dim; ++j) {
        int64_t ja = gather_bits(j, a_sites), jb = gather_bits(j, b_sites);
        int64_t i = 0;
        for (size_t k = 0; k < a_sites.size(); ++k) i |= ((jb >> k) & 1) << a_sites[k];
        for (size_t k = 0; k < b_sites.size(); ++k) i |= ((ja >> k) & 1) << b_sites[k];
        m(i, j) = 1.0;
    }
    return m;
}

double entangling_power_identity_rhs(const MatrixC& u, const Bipartition& b, RenyiIndex alpha) {
    double dsq = static_cast<double>(int64_t{1} << b.n);
    dsq *= dsq;  // D^2
    double d = std::sqrt(dsq);
    double eu = operator_entanglement_u(u, b, alpha);
    double eus = operator_entanglement_u(u * swap_unitary(b), b, alpha);
    return dsq / ((d + 1.0) * (d + 1.0)) * (eu + eus - (dsq - 1.0) / dsq);
}

}  // namespace opspace
