#include "opspace/sym4.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace opspace {

namespace {

S4Tables build_tables() {
    S4Tables t;
    std::array<int, 4> p = {0, 1, 2, 3};
    int idx = 0;
    do {
        t.perm[idx++] = p;
    } while (std::next_permutation(p.begin(), p.end()));

    auto find = [&](const std::array<int, 4>& m) {
        for (int i = 0; i < 24; ++i)
            if (t.perm[i] == m) return i;
        throw std::logic_error("S4Tables: permutation not found");
    };

    for (int a = 0; a < 24; ++a)
        for (int b = 0; b < 24; ++b) {
            std::array<int, 4> m;
            for (int i = 0; i < 4; ++i) m[i] = t.perm[a][t.perm[b][i]];
            t.compose[a][b] = find(m);
        }
    for (int a = 0; a < 24; ++a) {
        std::array<int, 4> m;
        for (int i = 0; i < 4; ++i) m[t.perm[a][i]] = i;
        t.inverse[a] = find(m);
    }
    for (int a = 0; a < 24; ++a) {
        bool seen[4] = {};
        int n_cycles = 0;
        bool any_odd = false;
        std::string notation;
        for (int i = 0; i < 4; ++i) {
            if (seen[i]) continue;
            int len = 0;
            int j = i;
            std::string cyc = "(";
            do {
                seen[j] = true;
                cyc += std::to_string(j + 1);
                j = t.perm[a][j];
                ++len;
                if (j != i) cyc += " ";
            } while (j != i);
            cyc += ")";
            ++n_cycles;
            if (len % 2 == 1) any_odd = true;
            if (len > 1) notation += cyc;
        }
        t.cycles[a] = n_cycles;
        t.delta_o[a] = any_odd ? 1 : 0;
        t.cycle_notation[a] = notation.empty() ? "e" : notation;
        // Class by sorted cycle type.
        switch (n_cycles) {
            case 4: t.class_of[a] = 0; break;                    // e
            case 3: t.class_of[a] = 1; break;                    // (ab)
            case 2: t.class_of[a] = any_odd ? 3 : 2; break;      // (abc) vs (ab)(cd)
            case 1: t.class_of[a] = 4; break;                    // (abcd)
        }
    }
    t.id = find({0, 1, 2, 3});
    t.pair_ab = find({1, 0, 3, 2});  // (1 2)(3 4)
    t.pair_ad = find({3, 2, 1, 0});  // (1 4)(2 3)

    static const int chars[5][5] = {
        {1, 1, 1, 1, 1},     // [4]
        {3, 1, -1, 0, -1},   // [3,1]
        {2, 0, 2, -1, 0},    // [2,2]
        {3, -1, -1, 0, 1},   // [2,1,1]
        {1, -1, 1, 1, -1},   // [1,1,1,1]
    };
    for (int l = 0; l < 5; ++l)
        for (int c = 0; c < 5; ++c) t.character[l][c] = chars[l][c];
    return t;
}

}  // namespace

const S4Tables& S4Tables::get() {
    static const S4Tables tables = build_tables();
    return tables;
}

int S4Tables::id_of(const std::array<int, 4>& mapping) const {
    for (int i = 0; i < 24; ++i)
        if (perm[i] == mapping) return i;
    throw std::invalid_argument("S4Tables::id_of: not a permutation of {0,1,2,3}");
}

bool S4Tables::verify_character_orthogonality() const {
    // Row orthogonality: sum_c size_c chi_l(c) chi_m(c) = 24 delta_lm.
    for (int l = 0; l < 5; ++l)
        for (int m = 0; m < 5; ++m) {
            int s = 0;
            for (int c = 0; c < 5; ++c) s += class_size[c] * character[l][c] * character[m][c];
            if (s != (l == m ? 24 : 0)) return false;
        }
    // Column orthogonality: sum_l chi_l(c) chi_l(c') = (24/size_c) delta_cc'.
    for (int c = 0; c < 5; ++c)
        for (int cc = 0; cc < 5; ++cc) {
            int s = 0;
            for (int l = 0; l < 5; ++l) s += character[l][c] * character[l][cc];
            if (s != (c == cc ? 24 / class_size[c] : 0)) return false;
        }
    return true;
}

Rational replica_pauli_trace(int pi, const Rational& d, LambdaKind kind) {
    const S4Tables& t = S4Tables::get();
    if (pi < 0 || pi >= 24) throw std::invalid_argument("replica_pauli_trace: bad permutation id");
    switch (kind) {
        case LambdaKind::Plus:
        case LambdaKind::PlusWithO4:
            return rational_pow(d, t.cycles[pi] - 2 * t.delta_o[pi]);
        case LambdaKind::MinusWithO4:
            if (!t.delta_o[pi]) return Rational(0);
            return -rational_pow(d, t.cycles[pi] - 2);
    }
    throw std::logic_error("replica_pauli_trace: unknown kind");
}

std::array<Rational, 5> d_lambda_x(long d, WgKind kind) {
    const S4Tables& t = S4Tables::get();
    std::array<Rational, 5> out{};
    for (int l = 0; l < 5; ++l) {
        Rational sum = 0;
        for (int p = 0; p < 24; ++p) {
            Rational g;
            switch (kind) {
                case WgKind::Haar: g = rational_pow(Rational(d), t.cycles[p]); break;
                case WgKind::CliffordPlus:
                    g = rational_pow(Rational(d), t.cycles[p] - 2 * t.delta_o[p]);
                    break;
                case WgKind::CliffordMinus:
                    g = rational_pow(Rational(d), t.cycles[p]) -
                        rational_pow(Rational(d), t.cycles[p] - 2 * t.delta_o[p]);
                    break;
            }
            sum += Rational(t.character[l][t.class_of[p]]) * g;
        }
        out[l] = Rational(t.irrep_dim[l]) * sum / 24;
    }
    return out;
}

namespace {

Mat24<Rational> build_wg(long d, WgKind kind) {
    const S4Tables& t = S4Tables::get();
    std::array<Rational, 5> dl = d_lambda_x(d, kind);
    // Class function w(rho) = sum_{lambda: D_lambda != 0} d_l^3 chi(rho) / (576 D_lambda),
    // the Gram pseudo-inverse on the span of the projected permutations.
    std::array<Rational, 5> w_by_class{};
    for (int c = 0; c < 5; ++c) {
        Rational sum = 0;
        for (int l = 0; l < 5; ++l) {
            if (dl[l] == 0) continue;
            long dim = t.irrep_dim[l];
            sum += Rational(dim) * dim * dim * t.character[l][c] / (Rational(576) * dl[l]);
        }
        w_by_class[c] = sum;
    }
    Mat24<Rational> m{};
    for (int p = 0; p < 24; ++p)
        for (int q = 0; q < 24; ++q) m[p][q] = w_by_class[t.class_of[t.compose[p][q]]];
    return m;
}

}  // namespace

const WeingartenTables& weingarten_tables(long d) {
    static std::map<long, WeingartenTables> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    if (d < 2) throw std::invalid_argument("weingarten_tables: d < 2");
    WeingartenTables t;
    t.d = d;
    t.d0 = d_lambda_x(d, WgKind::Haar);
    t.dp = d_lambda_x(d, WgKind::CliffordPlus);
    t.dm = d_lambda_x(d, WgKind::CliffordMinus);
    t.wg0 = build_wg(d, WgKind::Haar);
    t.wgp = build_wg(d, WgKind::CliffordPlus);
    t.wgm = build_wg(d, WgKind::CliffordMinus);
    return cache.emplace(d, std::move(t)).first->second;
}

Mat24<Rational> wg_haar(long d) { return weingarten_tables(d).wg0; }

std::pair<Mat24<Rational>, Mat24<Rational>> wg_clifford(long d) {
    const WeingartenTables& t = weingarten_tables(d);
    return {t.wgp, t.wgm};
}

namespace {

// ---- dense 16x16 machinery on (C^2)^(x4) ----------------------------------

// Replica r is bit r of the 4-bit basis index.
inline int permute_bits(const std::array<int, 4>& inv_perm, int i) {
    int out = 0;
    for (int r = 0; r < 4; ++r) out |= ((i >> inv_perm[r]) & 1) << r;
    return out;
}

// T_sigma |b_0..b_3> = |b_{sigma^-1(0)}, ..., b_{sigma^-1(3)}>.
inline int t_sigma_image(const S4Tables& t, int sigma, int i) {
    return permute_bits(t.perm[t.inverse[sigma]], i);
}

template <class S>
using M16 = std::array<S, 256>;

template <class S>
M16<S> m16_mul(const M16<S>& a, const M16<S>& b) {
    M16<S> c{};
    for (int i = 0; i < 16; ++i)
        for (int k = 0; k < 16; ++k) {
            const S& aik = a[i * 16 + k];
            if (aik == S(0)) continue;
            for (int j = 0; j < 16; ++j) c[i * 16 + j] += aik * b[k * 16 + j];
        }
    return c;
}

// lambda_plus (N=1) entries are 0, 1/2, or +-1/2 with i^2 factors from Y.
template <class S, class MakeI>
M16<S> lambda_plus_16(MakeI make_i) {
    // 2x2 letters over scalars: entry tables via (value, i-power).
    // I, X, Z real; Y = [[0,-i],[i,0]].
    M16<S> out{};
    for (int pauli = 0; pauli < 4; ++pauli) {
        // single-qubit entries m[r][c]
        S m[2][2];
        for (auto& row : m)
            for (auto& e : row) e = S(0);
        switch (pauli) {
            case 0: m[0][0] = S(1); m[1][1] = S(1); break;                       // I
            case 1: m[0][1] = S(1); m[1][0] = S(1); break;                       // X
            case 2: m[0][1] = -make_i(); m[1][0] = make_i(); break;              // Y
            case 3: m[0][0] = S(1); m[1][1] = S(-1); break;                      // Z
        }
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                S v = S(1);
                for (int r = 0; r < 4; ++r) v = v * m[(i >> r) & 1][(j >> r) & 1];
                out[i * 16 + j] += v;
            }
    }
    for (auto& e : out) e = e / S(4);
    return out;
}

}  // namespace

std::array<double, 24> f_sigma(double theta) {
    using C = std::complex<double>;
    const S4Tables& t = S4Tables::get();
    auto make_i = []() { return C(0.0, 1.0); };
    M16<C> lp = lambda_plus_16<C>(make_i);
    C e = std::polar(1.0, theta);
    // M = K4 * lp * K4^dag * lp ; K4 diagonal.
    M16<C> a = lp;
    for (int i = 0; i < 16; ++i) {
        C di = 1.0, dj;
        for (int r = 0; r < 4; ++r)
            if ((i >> r) & 1) di *= e;
        for (int j = 0; j < 16; ++j) {
            dj = 1.0;
            for (int r = 0; r < 4; ++r)
                if ((j >> r) & 1) dj *= std::conj(e);
            a[i * 16 + j] = di * lp[i * 16 + j] * dj;
        }
    }
    M16<C> m = m16_mul(a, lp);
    std::array<double, 24> out{};
    for (int sigma = 0; sigma < 24; ++sigma) {
        C tr = 0.0;
        for (int i = 0; i < 16; ++i) tr += m[i * 16 + t_sigma_image(t, sigma, i)];
        out[sigma] = tr.real();
    }
    return out;
}

namespace {

// Exact arithmetic in Q(zeta_8), zeta = e^{i pi/4}, zeta^4 = -1.
struct Cyc8 {
    std::array<Rational, 4> c{};  // c0 + c1 z + c2 z^2 + c3 z^3

    Cyc8() = default;
    explicit Cyc8(long v) { c[0] = v; }
    explicit Cyc8(const Rational& v) { c[0] = v; }
    static Cyc8 zeta_pow(int k) {
        k = ((k % 8) + 8) % 8;
        Cyc8 out;
        if (k < 4)
            out.c[k] = 1;
        else
            out.c[k - 4] = -1;
        return out;
    }
    bool operator==(const Cyc8& o) const { return c == o.c; }
    Cyc8 operator+(const Cyc8& o) const {
        Cyc8 r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Cyc8& operator+=(const Cyc8& o) {
        for (int i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }
    Cyc8 operator-() const {
        Cyc8 r;
        for (int i = 0; i < 4; ++i) r.c[i] = -c[i];
        return r;
    }
    Cyc8 operator*(const Cyc8& o) const {
        Cyc8 r;
        for (int i = 0; i < 4; ++i) {
            if (c[i] == 0) continue;
            for (int j = 0; j < 4; ++j) {
                if (o.c[j] == 0) continue;
                int k = i + j;
                if (k < 4)
                    r.c[k] += c[i] * o.c[j];
                else
                    r.c[k - 4] -= c[i] * o.c[j];
            }
        }
        return r;
    }
    Cyc8 operator/(const Cyc8& o) const {
        // Only division by rational scalars is needed.
        if (o.c[1] != 0 || o.c[2] != 0 || o.c[3] != 0)
            throw std::logic_error("Cyc8: general division unsupported");
        Cyc8 r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] / o.c[0];
        return r;
    }
    Cyc8 conj() const {
        // conj(zeta^k) = zeta^{-k}: {c0, -c3, -c2, -c1}.
        Cyc8 r;
        r.c[0] = c[0];
        r.c[1] = -c[3];
        r.c[2] = -c[2];
        r.c[3] = -c[1];
        return r;
    }
    bool is_rational() const { return c[1] == 0 && c[2] == 0 && c[3] == 0; }
};

}  // namespace

namespace {

std::array<Rational, 24> f_sigma_exact_uncached(int k_pi_over_4);

}  // namespace

std::array<Rational, 24> f_sigma_exact(int k_pi_over_4) {
    static std::map<int, std::array<Rational, 24>> cache;
    static std::mutex mu;
    int k = ((k_pi_over_4 % 8) + 8) % 8;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, f_sigma_exact_uncached(k)).first;
    return it->second;
}

namespace {

std::array<Rational, 24> f_sigma_exact_uncached(int k_pi_over_4) {
    const S4Tables& t = S4Tables::get();
    auto make_i = []() { return Cyc8::zeta_pow(2); };
    M16<Cyc8> lp = lambda_plus_16<Cyc8>(make_i);
    Cyc8 e = Cyc8::zeta_pow(k_pi_over_4);
    Cyc8 ec = e.conj();
    M16<Cyc8> a = lp;
    for (int i = 0; i < 16; ++i) {
        Cyc8 di(1L);
        for (int r = 0; r < 4; ++r)
            if ((i >> r) & 1) di = di * e;
        for (int j = 0; j < 16; ++j) {
            Cyc8 dj(1L);
            for (int r = 0; r < 4; ++r)
                if ((j >> r) & 1) dj = dj * ec;
            a[i * 16 + j] = di * lp[i * 16 + j] * dj;
        }
    }
    M16<Cyc8> m = m16_mul(a, lp);
    std::array<Rational, 24> out{};
    for (int sigma = 0; sigma < 24; ++sigma) {
        Cyc8 tr;
        for (int i = 0; i < 16; ++i) tr += m[i * 16 + t_sigma_image(t, sigma, i)];
        if (!tr.is_rational())
            throw std::logic_error("f_sigma_exact: trace not rational at this angle");
        out[sigma] = tr.c[0];
    }
    return out;
}

}  // namespace

Rational boundary_trace(int sigma, const Rational& d_a, const Rational& d_b, bool with_lambda) {
    const S4Tables& t = S4Tables::get();
    if (sigma < 0 || sigma >= 24) throw std::invalid_argument("boundary_trace: bad permutation id");
    int sa = t.compose[sigma][t.pair_ab];
    int sb = t.compose[sigma][t.pair_ad];
    int ea = t.cycles[sa] - (with_lambda ? 2 * t.delta_o[sa] : 0);
    int eb = t.cycles[sb] - (with_lambda ? 2 * t.delta_o[sb] : 0);
    return rational_pow(d_a, ea) * rational_pow(d_b, eb);
}

}  // namespace opspace
