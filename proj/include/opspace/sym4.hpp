#pragma once

#include "opspace/rational.hpp"

#include <array>
#include <string>

namespace opspace {

template <class S>
using Mat24 = std::array<std::array<S, 24>, 24>;

template <class S>
Mat24<S> mat24_mul(const Mat24<S>& a, const Mat24<S>& b) {
    Mat24<S> c{};
    for (int i = 0; i < 24; ++i)
        for (int k = 0; k < 24; ++k) {
            const S& aik = a[i][k];
            if (aik == S(0)) continue;
            for (int j = 0; j < 24; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

template <class S>
Mat24<S> mat24_identity() {
    Mat24<S> m{};
    for (int i = 0; i < 24; ++i) m[i][i] = S(1);
    return m;
}

// Exact integer data for S4: permutations in lexicographic order, the group
// law (compose(p,q) applies q first), cycle counts, the even-cycle indicator
// delta_o (0 iff every cycle has even length), conjugacy classes, and the
// character table. Classes in order e, (ab), (ab)(cd), (abc), (abcd);
// irreps in order [4], [3,1], [2,2], [2,1,1], [1,1,1,1].
struct S4Tables {
    std::array<std::array<int, 4>, 24> perm;
    int compose[24][24];
    int inverse[24];
    int cycles[24];
    int delta_o[24];
    int class_of[24];
    std::array<int, 5> class_size = {1, 6, 3, 8, 6};
    std::array<int, 5> irrep_dim = {1, 3, 2, 3, 1};
    int character[5][5];
    int id;        // identity permutation
    int pair_ab;   // (1 2)(3 4)
    int pair_ad;   // (1 4)(2 3)
    std::array<std::string, 24> cycle_notation;

    static const S4Tables& get();
    int id_of(const std::array<int, 4>& mapping) const;
    bool verify_character_orthogonality() const;
};

enum class LambdaKind { Plus, PlusWithO4, MinusWithO4 };

// Replica traces tr[O^(x4) Lambda^x T_pi] for a traceless Pauli O:
// D^(#pi - 2 delta) for the plus projector, -delta * D^(#pi - 2) for minus.
Rational replica_pauli_trace(int pi, const Rational& d, LambdaKind kind);

enum class WgKind { Haar, CliffordPlus, CliffordMinus };

// Per-irrep scalars D_lambda^x = tr[Lambda^x T_lambda] (full isotypic trace).
std::array<Rational, 5> d_lambda_x(long d, WgKind kind);

struct WeingartenTables {
    long d = 2;
    std::array<Rational, 5> d0, dp, dm;
    Mat24<Rational> wg0, wgp, wgm;
};

// Haar and generalized Clifford Weingarten tables at dimension d, exact.
// Irreps with a vanishing D_lambda^x are excluded (Gram pseudo-inverse).
const WeingartenTables& weingarten_tables(long d);

Mat24<Rational> wg_haar(long d);
std::pair<Mat24<Rational>, Mat24<Rational>> wg_clifford(long d);

// f_sigma of the single-qubit rotation sandwich, tr[K^4 L+ K^4dag L+ T_sigma]
// at local dimension 2, by dense 16x16 brute force.
std::array<double, 24> f_sigma(double theta);
// Exact values for theta = k pi/4, via arithmetic in Q(zeta_8).
std::array<Rational, 24> f_sigma_exact(int k_pi_over_4);

// tr[T_sigma T'] and tr[Lambda+ T_sigma T'] for the purity permutation T'.
Rational boundary_trace(int sigma, const Rational& d_a, const Rational& d_b, bool with_lambda);

}  // namespace opspace
