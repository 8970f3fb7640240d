#include "opspace/averages.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opspace {

namespace {

void check_cut(int64_t D, int64_t D_A, const char* who) {
    if (D_A < 2 || D_A >= D || D % D_A != 0)
        throw std::invalid_argument(std::string(who) + ": D_A must divide D, 2 <= D_A < D");
}

using RVec = std::array<Rational, 24>;

RVec boundary_vector(const Rational& d_a, const Rational& d_b, bool with_lambda) {
    RVec v{};
    for (int s = 0; s < 24; ++s) v[s] = boundary_trace(s, d_a, d_b, with_lambda);
    return v;
}

}  // namespace

Rational haar_avg_purity(int64_t D, int64_t D_A) {
    if (D <= 3) throw std::invalid_argument("haar_avg_purity: D <= 3 (pole at D^2 = 9)");
    check_cut(D, D_A, "haar_avg_purity");
    Rational d(D), da(D_A);
    Rational da2 = da * da, d2 = d * d;
    Rational num = (da2 * da2 + d2) * (d2 - 10) - da2 * (d2 - 19);
    Rational den = da2 * (d2 - 9) * (d2 - 1);
    return num / den;
}

Rational haar_avg_purity_weingarten_sum(int64_t D, int64_t D_A) {
    check_cut(D, D_A, "haar_avg_purity_weingarten_sum");
    const S4Tables& t = S4Tables::get();
    const WeingartenTables& wg = weingarten_tables(D);
    Rational d(D), da(D_A), db = d / da;
    RVec a0 = boundary_vector(da, db, false);
    // tr[O^(x4) T_pi] = D^(#pi) on even permutations, 0 otherwise.
    Rational sum = 0;
    for (int p = 0; p < 24; ++p) {
        if (t.delta_o[p]) continue;
        Rational tp = rational_pow(d, t.cycles[p]);
        for (int s = 0; s < 24; ++s) sum += wg.wg0[p][s] * tp * a0[s];
    }
    return sum / (d * d);
}

Rational nu_compressible_purity_sum(int n_qubits, int64_t d_a, int ell) {
    if (ell < 0 || ell > n_qubits)
        throw std::invalid_argument("nu_compressible_purity_sum: ell out of range");
    if (ell == 0) return Rational(1);  // pure Clifford: Pauli Choi state is product
    int64_t D = int64_t{1} << n_qubits;
    check_cut(D, d_a, "nu_compressible_purity_sum");
    const S4Tables& t = S4Tables::get();
    const WeingartenTables& cliff = weingarten_tables(D);
    int64_t Dnu = int64_t{1} << ell;
    const WeingartenTables& haar = weingarten_tables(Dnu);
    Rational d(D), dnu(Dnu), drest(int64_t{1} << (n_qubits - ell));
    Rational da(d_a), db = d / da;

    // First Clifford average: projected replica-trace coefficients.
    RVec u{}, w{};
    for (int eta = 0; eta < 24; ++eta) {
        for (int zeta = 0; zeta < 24; ++zeta) {
            Rational plus = rational_pow(d, t.cycles[zeta] - 2 * t.delta_o[zeta]);
            u[eta] += (cliff.wgp[zeta][eta] +
                       (t.delta_o[zeta] ? cliff.wgm[zeta][eta] : Rational(0))) *
                      plus;
            if (t.delta_o[zeta])
                w[eta] += cliff.wgm[zeta][eta] * rational_pow(d, t.cycles[zeta] - 2);
        }
    }
    // Haar average on the ell-qubit block.
    Mat24<Rational> g_lambda{}, g_plain{};
    for (int eta = 0; eta < 24; ++eta)
        for (int kappa = 0; kappa < 24; ++kappa) {
            int ek = t.compose[eta][kappa];
            Rational tl = rational_pow(dnu, t.cycles[ek] - 2 * t.delta_o[ek]);
            Rational tp = rational_pow(dnu, t.cycles[ek]);
            for (int mu = 0; mu < 24; ++mu) {
                g_lambda[eta][mu] += haar.wg0[kappa][mu] * tl;
                g_plain[eta][mu] += haar.wg0[kappa][mu] * tp;
            }
        }
    // Boundary contractions of the second Clifford average.
    RVec ap = boundary_vector(da, db, true);
    RVec a0 = boundary_vector(da, db, false);
    RVec p_plus{}, p_minus{}, q_minus{};
    for (int pi = 0; pi < 24; ++pi)
        for (int s = 0; s < 24; ++s) {
            p_plus[pi] += cliff.wgp[pi][s] * ap[s];
            p_minus[pi] += cliff.wgm[pi][s] * ap[s];
            q_minus[pi] += cliff.wgm[pi][s] * a0[s];
        }
    // Split factors D_{N-ell}^... and D_ell^... of the second average.
    Mat24<Rational> ea{}, eb{}, ha{}, hb{};
    for (int pi = 0; pi < 24; ++pi)
        for (int rho = 0; rho < 24; ++rho) {
            int pr = t.compose[pi][rho];
            ea[pi][rho] = rational_pow(drest, t.cycles[pr] - 2 * t.delta_o[pr]);
            eb[pi][rho] = rational_pow(drest, t.cycles[pr]);
            ha[pi][rho] = rational_pow(dnu, t.cycles[pr] - 2 * t.delta_o[pr]);
            hb[pi][rho] = rational_pow(dnu, t.cycles[pr]);
        }
    Mat24<Rational> x44{}, x43{};
    for (int pi = 0; pi < 24; ++pi) {
        Rational pp = p_plus[pi] + p_minus[pi];
        for (int eta = 0; eta < 24; ++eta)
            for (int mu = 0; mu < 24; ++mu) {
                const Rational& fa = ea[pi][eta];
                const Rational& fb = eb[pi][eta];
                const Rational& ga = ha[pi][mu];
                const Rational& gb = hb[pi][mu];
                x44[eta][mu] += pp * fa * ga - p_minus[pi] * fa * gb +
                                q_minus[pi] * (fa * gb - fa * ga);
                x43[eta][mu] += pp * fa * ga - p_minus[pi] * fb * gb +
                                q_minus[pi] * (fb * gb - fa * ga);
            }
    }
    Rational total = 0;
    for (int eta = 0; eta < 24; ++eta)
        for (int mu = 0; mu < 24; ++mu)
            total += u[eta] * g_lambda[eta][mu] * x44[eta][mu] -
                     w[eta] * g_plain[eta][mu] * x43[eta][mu];
    return total / (d * d);
}

Rational nu_compressible_purity_closed(int n_qubits, int64_t d_a, int ell) {
    if (ell < 0 || ell > n_qubits)
        throw std::invalid_argument("nu_compressible_purity_closed: ell out of range");
    if (ell == 0) return Rational(1);
    int64_t D = int64_t{1} << n_qubits;
    check_cut(D, d_a, "nu_compressible_purity_closed");
    Rational d(D), da(d_a);
    Rational d2 = d * d, da2 = da * da;
    Rational p16 = rational_pow(Rational(16), ell);
    Rational p4 = rational_pow(Rational(4), ell);
    Rational p64 = rational_pow(Rational(64), ell);
    Rational term1 = 24 * d2 * d2 * (d - da) * (d + da) * (da2 - 1);
    Rational term2 = -4 * p4 * d2 * (9 * d2 - 4) * (d - da) * (d + da) * (da2 - 1);
    Rational term3 = p16 * (18 * d2 * d2 - 13 * d2 * d2 * d2 +
                            (36 - 99 * d2 + 49 * d2 * d2 + 4 * d2 * d2 * d2) * da2 +
                            d2 * (18 - 13 * d2) * da2 * da2);
    Rational term4 = p64 * (d2 * d2 * d2 - 4 * da2 + d2 * da2 * (11 - 2 * da2) +
                            d2 * d2 * (-2 - 5 * da2 + da2 * da2));
    Rational denom = (p4 - 9) * (d2 - 4) * (d2 - 1) * (d2 - 1) * da2;
    return (term1 + term2 + term3 + term4) / (p16 * denom);
}

namespace {

// Shared T-doped assembly over an arbitrary scalar (Rational or double).
template <class S, class FVec>
S t_doped_assembly(int tau, const FVec& f, const Mat24<S>& wgp, const Mat24<S>& wgm, const S& d,
                   const S& d1, const S& da, const S& db) {
    const S4Tables& t = S4Tables::get();
    auto powi = [](const S& b, int e) {
        S r(1);
        for (int i = 0; i < e; ++i) r = r * b;
        return r;
    };
    std::array<S, 24> m1{}, m2{};
    for (int r = 0; r < 24; ++r) {
        m1[r] = powi(d, t.cycles[r] - 2 * t.delta_o[r]);
        m2[r] = powi(d1, t.cycles[r] - 2 * t.delta_o[r]) * f[r];
    }
    Mat24<S> xi{}, fmat{};
    for (int s = 0; s < 24; ++s)
        for (int p = 0; p < 24; ++p) {
            S acc(0);
            for (int mu = 0; mu < 24; ++mu) {
                int ms = t.compose[mu][s];
                acc += (wgp[p][mu] + wgm[p][mu]) * m2[ms] - wgm[p][mu] * m1[ms];
            }
            xi[s][p] = acc;
        }
    for (int p = 0; p < 24; ++p)
        for (int mu = 0; mu < 24; ++mu) {
            S acc(0);
            for (int z = 0; z < 24; ++z) {
                int zm = t.compose[z][mu];
                acc += wgm[p][z] * (m1[zm] - m2[zm]);
            }
            fmat[p][mu] = acc;
        }
    std::array<S, 24> c{}, b{};
    for (int p = 0; p < 24; ++p) {
        S accc(0), accb(0);
        for (int s = 0; s < 24; ++s) {
            accc += (wgp[p][s] + wgm[p][s]) * m1[s];
            if (!t.delta_o[s]) accc -= wgm[p][s] * powi(d, t.cycles[s]);
            if (t.delta_o[s]) accb -= wgm[p][s] * powi(d, t.cycles[s] - 2);
        }
        c[p] = accc;
        b[p] = accb;
    }
    std::array<S, 24> ap{}, a0{};
    for (int s = 0; s < 24; ++s) {
        int sa = t.compose[s][t.pair_ab];
        int sb = t.compose[s][t.pair_ad];
        ap[s] = powi(da, t.cycles[sa] - 2 * t.delta_o[sa]) *
                powi(db, t.cycles[sb] - 2 * t.delta_o[sb]);
        a0[s] = powi(da, t.cycles[sa]) * powi(db, t.cycles[sb]);
    }
    // Geometric pieces: Xi^tau and sum_{i<tau} Xi^i by halving.
    struct Geo {
        Mat24<S> sum, power;
    };
    auto geo = [&](auto&& self, int k) -> Geo {
        if (k == 0) return {Mat24<S>{}, mat24_identity<S>()};
        Geo half = self(self, k / 2);
        Geo out;
        Mat24<S> shift = mat24_mul(half.power, half.sum);
        for (int i = 0; i < 24; ++i)
            for (int j = 0; j < 24; ++j) out.sum[i][j] = half.sum[i][j] + shift[i][j];
        out.power = mat24_mul(half.power, half.power);
        if (k & 1) {
            for (int i = 0; i < 24; ++i)
                for (int j = 0; j < 24; ++j) out.sum[i][j] += out.power[i][j];
            out.power = mat24_mul(out.power, xi);
        }
        return out;
    };
    Geo g = geo(geo, tau);
    Mat24<S> gamma = mat24_mul(fmat, g.sum);
    S total(0);
    for (int p = 0; p < 24; ++p) {
        for (int s = 0; s < 24; ++s)
            total += g.power[p][s] * c[p] * ap[s] + gamma[p][s] * c[p] * a0[s];
        total += b[p] * a0[p];
    }
    return total / (d * d);
}

}  // namespace

Rational t_doped_assembly_value(int n_qubits, int64_t d_a, int tau, int theta_k) {
    if (tau < 0) throw std::invalid_argument("t_doped_assembly_value: tau < 0");
    int64_t D = int64_t{1} << n_qubits;
    check_cut(D, d_a, "t_doped_assembly_value");
    const WeingartenTables& cliff = weingarten_tables(D);
    std::array<Rational, 24> f = f_sigma_exact(theta_k);
    Rational d(D), d1(int64_t{1} << (n_qubits - 1)), da(d_a), db = d / da;
    return t_doped_assembly<Rational>(tau, f, cliff.wgp, cliff.wgm, d, d1, da, db);
}

Rational t_doped_purity_sum(int n_qubits, int64_t d_a, int tau, int theta_k) {
    if (tau < 0) throw std::invalid_argument("t_doped_purity_sum: tau < 0");
    if (tau == 0) return Rational(1);  // Clifford-only average
    return t_doped_assembly_value(n_qubits, d_a, tau, theta_k);
}

double t_doped_purity_sum_general(int n_qubits, int64_t d_a, int tau, double theta) {
    if (tau < 0) throw std::invalid_argument("t_doped_purity_sum_general: tau < 0");
    if (tau == 0) return 1.0;
    int64_t D = int64_t{1} << n_qubits;
    check_cut(D, d_a, "t_doped_purity_sum_general");
    const WeingartenTables& cliff = weingarten_tables(D);
    Mat24<double> wgp{}, wgm{};
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            wgp[i][j] = to_double(cliff.wgp[i][j]);
            wgm[i][j] = to_double(cliff.wgm[i][j]);
        }
    std::array<double, 24> f = f_sigma(theta);
    double d = static_cast<double>(D), d1 = static_cast<double>(int64_t{1} << (n_qubits - 1));
    double da = static_cast<double>(d_a), db = d / da;
    return t_doped_assembly<double>(tau, f, wgp, wgm, d, d1, da, db);
}

Rational t_doped_purity_closed_halfcut(int n_qubits, int tau) {
    if (n_qubits % 2 != 0)
        throw std::invalid_argument("t_doped_purity_closed_halfcut: N must be even");
    if (tau < 0) throw std::invalid_argument("t_doped_purity_closed_halfcut: tau < 0");
    Rational d(int64_t{1} << n_qubits);
    Rational d2 = d * d;
    Rational four_tau = rational_pow(Rational(4), tau);
    Rational dm1 = d - 1, dp1 = d + 1;
    Rational term1 = Rational(1) / (d2 - 1);
    Rational growth_a = rational_pow(3 * d * (d - 1) - 4, tau);
    Rational growth_b = four_tau * rational_pow(d2 - 1, tau);
    Rational term2 = d * (272 + 48 * d2 + d2 * d2) * (-growth_a + growth_b) /
                     (4 * four_tau * rational_pow(d2 - 1, tau) * dm1 * dp1 * (d + 2) * (d + 3) *
                      (d + 4));
    Rational term3 = ((d - 2) * dm1 * rational_pow(3 * d * (d + 1) - 4, tau) +
                      dp1 * ((d + 2) * rational_pow(3 * d * (d - 1) - 4, tau) +
                             4 * dm1 * rational_pow(3 * d2 - 4, tau))) /
                     (6 * four_tau * rational_pow(d2 - 1, tau + 1));
    return term1 + term2 + term3;
}

LoeBounds loe_lower_bounds(BoundKind kind, int param, int n_qubits) {
    if (n_qubits % 2 != 0) throw std::invalid_argument("loe_lower_bounds: N must be even (half cut)");
    int64_t D = int64_t{1} << n_qubits;
    int64_t d_a = int64_t{1} << (n_qubits / 2);
    LoeBounds out;
    switch (kind) {
        case BoundKind::Nu: {
            int ell = (param + 1) / 2;  // ell = ceil(nu/2)
            Rational purity = nu_compressible_purity_sum(n_qubits, d_a, ell);
            out.jensen_bound_bits = -log2_rational(purity);
            out.leading_order_bits = static_cast<double>(param) - 2.0;
            break;
        }
        case BoundKind::Tau: {
            Rational purity = t_doped_purity_sum(n_qubits, d_a, param);
            out.jensen_bound_bits = -log2_rational(purity);
            out.leading_order_bits = std::log2(4.0 / 3.0) * static_cast<double>(param);
            break;
        }
        case BoundKind::Haar: {
            Rational purity = haar_avg_purity(D, d_a);
            out.jensen_bound_bits = -log2_rational(purity);
            out.leading_order_bits = static_cast<double>(n_qubits) - 2.0;
            break;
        }
    }
    return out;
}

}  // namespace opspace
