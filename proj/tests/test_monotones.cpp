#include "opspace/clifford.hpp"
#include "opspace/dense.hpp"
#include "opspace/monotones.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>

using namespace opspace;

namespace {

MatrixC random_operator(int n, Rng& rng) {
    int64_t dim = int64_t{1} << n;
    MatrixC o(dim, dim);
    for (int64_t i = 0; i < dim; ++i)
        for (int64_t j = 0; j < dim; ++j) o(i, j) = Complex(rng.normal(), rng.normal());
    return o;
}

Circuit random_clifford_t_circuit(int n, int n_gates, Rng& rng) {
    Circuit c;
    c.n_qubits = n;
    for (int k = 0; k < n_gates; ++k) {
        int kind = static_cast<int>(rng.uniform_int(4));
        int a = static_cast<int>(rng.uniform_int(n));
        int b = (a + 1 + static_cast<int>(rng.uniform_int(n - 1))) % n;
        switch (kind) {
            case 0: c.h(a); break;
            case 1: c.s(a); break;
            case 2: c.cx(a, b); break;
            case 3: c.t(a); break;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("reduced choi spectrum basics") {
    // A Pauli string is a product operator: single Schmidt weight.
    Bipartition cut = Bipartition::from_sites(2, {0});
    auto w = reduced_choi_spectrum(choi_vector(pauli_to_dense(parse_pauli("+XY"))), cut);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-12));

    // (XX + YY)/sqrt2 across the 1:1 cut: hand SVD gives weights (1/2, 1/2).
    MatrixC o = (pauli_to_dense(parse_pauli("+XX")) + pauli_to_dense(parse_pauli("+YY"))) /
                std::sqrt(2.0);
    auto w2 = reduced_choi_spectrum(choi_vector(o), cut);
    REQUIRE(w2.size() >= 2);
    CHECK(w2[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w2[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w2.size() == 4);  // min(D_A^2, D_Abar^2) singular values
    CHECK(w2[2] < 1e-12);

    Rng rng(41);
    auto w3 = reduced_choi_spectrum(choi_vector(random_operator(3, rng)),
                                    Bipartition::from_sites(3, {1}));
    double sum = 0;
    for (double x : w3) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(reduced_choi_spectrum(choi_vector(o), Bipartition::from_sites(2, {})),
                    std::invalid_argument);
}

TEST_CASE("reduced spectrum matches a direct partial-trace eigendecomposition") {
    // Clifford+T Heisenberg operators have highly degenerate Schmidt spectra
    // on asymmetric cuts; pin the SVD route to the rho_A eigenvalue route.
    Rng rng(48);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 4;
        Circuit c = random_clifford_t_circuit(n, 20, rng);
        MatrixC o_u =
            heisenberg_conjugate(circuit_to_dense(c), pauli_to_dense(parse_pauli("+ZIII")));
        for (const Bipartition& cut : contiguous_cuts(n)) {
            ChoiVector v = choi_vector(o_u);
            auto mine = reduced_choi_spectrum(v, cut);
            // rho_A by explicit contraction over the Abar doubled index.
            auto a_sites = cut.a_sites();
            auto b_sites = cut.b_sites();
            int64_t dim = int64_t{1} << n, da = cut.d_a(), db = cut.d_b();
            auto gat = [](int64_t idx, const std::vector<int>& ss) {
                int64_t o = 0;
                for (size_t k = 0; k < ss.size(); ++k) o |= ((idx >> ss[k]) & 1) << k;
                return o;
            };
            MatrixC m(da * da, db * db);
            for (int64_t i = 0; i < dim; ++i)
                for (int64_t j = 0; j < dim; ++j)
                    m(gat(i, a_sites) * da + gat(j, a_sites),
                      gat(i, b_sites) * db + gat(j, b_sites)) = v.amps(i * dim + j);
            MatrixC rho = m * m.adjoint();
            Eigen::SelfAdjointEigenSolver<MatrixC> es(rho);
            std::vector<double> brute;
            for (int64_t k = 0; k < es.eigenvalues().size(); ++k)
                brute.push_back(std::max(0.0, es.eigenvalues()(k)));
            std::sort(brute.begin(), brute.end(), std::greater<>());
            for (size_t k = 0; k < brute.size(); ++k) {
                double got = k < mine.size() ? mine[k] : 0.0;
                CHECK(got == doctest::Approx(brute[k]).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("loe of Pauli operators vanishes for every alpha") {
    Bipartition cut = Bipartition::from_sites(3, {0, 2});
    MatrixC p = pauli_to_dense(parse_pauli("+XZY"));
    for (double a : {0.0, 0.5, 1.0, 2.0}) CHECK(std::abs(loe(p, cut, RenyiIndex::of(a))) < 1e-10);
    CHECK(std::abs(loe(p, cut, RenyiIndex::inf())) < 1e-10);
}

TEST_CASE("uniform two-weight spectrum gives one bit for every alpha") {
    MatrixC o = (pauli_to_dense(parse_pauli("+XX")) + pauli_to_dense(parse_pauli("+YY"))) /
                std::sqrt(2.0);
    Bipartition cut = Bipartition::from_sites(2, {0});
    for (double a : {0.0, 0.5, 1.0, 2.0})
        CHECK(loe(o, cut, RenyiIndex::of(a)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(loe(o, cut, RenyiIndex::inf()) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(op_purity(o, cut) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("single T on X stays single-site supported: zero LOE") {
    Circuit c;
    c.n_qubits = 3;
    c.t(0);
    MatrixC o_u = heisenberg_conjugate(circuit_to_dense(c), pauli_to_dense(parse_pauli("+XII")));
    for (const Bipartition& cut : contiguous_cuts(3))
        CHECK(std::abs(loe(o_u, cut, RenyiIndex::of(2.0))) < 1e-10);
}

TEST_CASE("ose fixed values") {
    CHECK(std::abs(ose(pauli_to_dense(parse_pauli("+ZZ")), RenyiIndex::of(1.0))) < 1e-12);
    MatrixC xy = (pauli_to_dense(PauliString::single(1, 0, 'X')) +
                  pauli_to_dense(PauliString::single(1, 0, 'Y'))) /
                 std::sqrt(2.0);
    for (double a : {0.5, 1.0, 2.0})
        CHECK(ose(xy, RenyiIndex::of(a)) == doctest::Approx(1.0).epsilon(1e-12));

    // Amplitudes (sqrt3/2, 1/2): Shannon entropy of (3/4, 1/4), computed from
    // the direct formula.
    MatrixC o = (std::sqrt(3.0) / 2.0) * pauli_to_dense(PauliString::single(1, 0, 'X')) +
                0.5 * pauli_to_dense(PauliString::single(1, 0, 'Y'));
    double expect = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
    CHECK(expect == doctest::Approx(0.8112781244591328).epsilon(1e-12));
    CHECK(ose(o, RenyiIndex::of(1.0)) == doctest::Approx(expect).epsilon(1e-12));

    // Non-unit norm input is normalized with a warning.
    std::string warn;
    CHECK(ose(2.0 * xy, RenyiIndex::of(2.0), &warn) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(!warn.empty());
    CHECK_THROWS_AS(ose(MatrixC::Zero(2, 2), RenyiIndex::of(1.0)), std::invalid_argument);
}

TEST_CASE("unitary nullity: Clifford, single T, and T x T") {
    Rng rng(42);
    for (int n = 1; n <= 3; ++n) {
        NullityResult r = unitary_nullity(tableau_to_dense(sample_uniform_clifford(n, rng)));
        CHECK(r.nu == 0);
        CHECK(r.stab_count == (int64_t{1} << (2 * n)));
        CHECK(r.count_is_power_of_two);
    }

    // Enumeration oracle at N=1: T fixes exactly {I, Z} of the four Paulis.
    MatrixC t = gate_matrix(Gate{GateKind::T, {0}});
    int fixed = 0;
    for (uint64_t z = 0; z < 2; ++z)
        for (uint64_t x = 0; x < 2; ++x) {
            PauliSpectrum s = pauli_transform(
                heisenberg_conjugate(t, pauli_to_dense(PauliString::from_xz(1, x, z, 0))));
            double best = 0;
            for (int64_t k = 0; k < s.coeffs.size(); ++k)
                best = std::max(best, std::abs(s.coeffs(k)));
            if (best >= 1.0 - 1e-6) ++fixed;
        }
    CHECK(fixed == 2);
    NullityResult rt = unitary_nullity(t);
    CHECK(rt.nu == 1);
    CHECK(rt.stab_count == 2);

    // Nullity is additive under tensor products: T x T has nu = 2.
    MatrixC tt = Eigen::kroneckerProduct(t, t).eval();
    NullityResult rtt = unitary_nullity(tt);
    CHECK(rtt.nu == 2);
    CHECK(rtt.count_is_power_of_two);

    CHECK_THROWS_AS(unitary_nullity(2.0 * t), std::invalid_argument);
}

TEST_CASE("t_count witness") {
    Circuit c;
    c.n_qubits = 2;
    c.h(0).cx(0, 1).s(1);
    CHECK(t_count(c) == 0);
    c.t(0).t(1).t(0);
    CHECK(t_count(c) == 3);
    c.rz(0, std::numbers::pi / 2);  // Clifford rotation is fine
    CHECK(t_count(c) == 3);
    Circuit bad = c;
    bad.rz(1, 0.3);
    CHECK_THROWS_AS(t_count(bad), std::invalid_argument);
    Circuit bad2;
    bad2.n_qubits = 1;
    bad2.dense({0}, MatrixC::Identity(2, 2));
    CHECK_THROWS_AS(t_count(bad2), std::invalid_argument);
}

TEST_CASE("operator entanglement of U: product and SWAP") {
    Rng rng(43);
    Bipartition cut = Bipartition::from_sites(2, {0});
    MatrixC ua = sample_haar_unitary(2, rng), ub = sample_haar_unitary(2, rng);
    MatrixC prod = Eigen::kroneckerProduct(ub, ua).eval();  // qubit 0 = A
    for (double a : {0.5, 1.0, 2.0})
        CHECK(std::abs(operator_entanglement_u(prod, cut, RenyiIndex::of(a))) < 1e-10);

    // SWAP on the 1:1 cut has Schmidt rank 4 with uniform weights: 2 bits.
    MatrixC swap = swap_unitary(cut);
    for (double a : {0.5, 1.0, 2.0})
        CHECK(operator_entanglement_u(swap, cut, RenyiIndex::of(a)) ==
              doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("entangling power: product unitaries generate nothing") {
    Rng rng(44);
    Bipartition cut = Bipartition::from_sites(2, {0});
    MatrixC prod = Eigen::kroneckerProduct(sample_haar_unitary(2, rng),
                                           sample_haar_unitary(2, rng))
                       .eval();
    Estimate e = entangling_power_mc(prod, cut, RenyiIndex::of(2.0), 50, 99);
    CHECK(std::abs(e.mean) < 1e-10);
}

TEST_CASE("entangling power of CNOT: MC self-oracle at larger n") {
    Circuit c;
    c.n_qubits = 2;
    c.cx(0, 1);
    MatrixC u = circuit_to_dense(c);
    Bipartition cut = Bipartition::from_sites(2, {0});
    Estimate probe = entangling_power_mc(u, cut, RenyiIndex::of(2.0), 2000, 7);
    Estimate oracle = entangling_power_mc(u, cut, RenyiIndex::of(2.0), 20000, 8);
    CHECK(probe.mean > 0.0);
    double se = std::sqrt(probe.std_error * probe.std_error +
                          oracle.std_error * oracle.std_error);
    CHECK(std::abs(probe.mean - oracle.mean) <= 3.0 * se);
    // The closed-form identity is reported, not asserted, for log-entropies.
    double rhs = entangling_power_identity_rhs(u, cut, RenyiIndex::of(2.0));
    MESSAGE("CNOT e_P alpha=2: mc=", probe.mean, " identity_rhs=", rhs);
}

TEST_CASE("product-unitary invariance of LOE") {
    Rng rng(45);
    Bipartition cut = Bipartition::from_sites(4, {0, 1});
    for (int t = 0; t < 100; ++t) {
        MatrixC o = random_operator(4, rng);
        MatrixC ua = sample_haar_unitary(4, rng), ub = sample_haar_unitary(4, rng);
        MatrixC prod = Eigen::kroneckerProduct(ub, ua).eval();
        MatrixC o2 = heisenberg_conjugate(prod, o);
        for (double a : {0.5, 1.0, 2.0})
            CHECK(std::abs(loe(o, cut, RenyiIndex::of(a)) - loe(o2, cut, RenyiIndex::of(a))) <
                  1e-10);
    }
}

TEST_CASE("Schmidt rank bound: E0(O_U) <= 2 E0(U)") {
    Rng rng(46);
    for (int t = 0; t < 100; ++t) {
        int n = 3 + static_cast<int>(rng.uniform_int(2));
        Circuit c = random_clifford_t_circuit(n, 12, rng);
        MatrixC u = circuit_to_dense(c);
        MatrixC o_u = heisenberg_conjugate(u, pauli_to_dense(PauliString::single(n, 0, 'Z')));
        for (const Bipartition& cut : contiguous_cuts(n)) {
            double e0_op = loe(o_u, cut, RenyiIndex::of(0.0));
            double e0_u = operator_entanglement_u(u, cut, RenyiIndex::of(0.0));
            CHECK(e0_op <= 2.0 * e0_u + 1e-9);
        }
    }
}

TEST_CASE("Renyi monotonicity and the OSE/LOE orderings") {
    Rng rng(47);
    for (int t = 0; t < 25; ++t) {
        int n = 3;
        Circuit c = random_clifford_t_circuit(n, 15, rng);
        MatrixC u = circuit_to_dense(c);
        MatrixC o_u = heisenberg_conjugate(u, pauli_to_dense(PauliString::single(n, 0, 'Z')));
        NullityResult nr = unitary_nullity(u);
        CHECK(nr.count_is_power_of_two);
        for (const Bipartition& cut : contiguous_cuts(n)) {
            double l2 = loe(o_u, cut, RenyiIndex::of(2.0));
            double l1 = loe(o_u, cut, RenyiIndex::of(1.0));
            double lh = loe(o_u, cut, RenyiIndex::of(0.5));
            CHECK(l2 <= l1 + 1e-10);
            CHECK(l1 <= lh + 1e-10);
            for (double a : {0.5, 1.0, 2.0}) {
                double m = ose(o_u, RenyiIndex::of(a));
                CHECK(loe(o_u, cut, RenyiIndex::of(a)) <= m + 1e-9);  // LOE <= OSE
                CHECK(m <= nr.nu + 1e-9);                             // OSE <= nu
            }
        }
    }
}
