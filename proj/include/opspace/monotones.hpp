#pragma once

#include "opspace/dense.hpp"
#include "opspace/pauli.hpp"
#include "opspace/stats.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opspace {

// Spatial bipartition A : Abar by site mask.
struct Bipartition {
    int n = 2;
    uint64_t a_mask = 1;

    static Bipartition from_sites(int n_qubits, const std::vector<int>& a_sites);
    int n_a() const;
    int n_b() const { return n - n_a(); }
    int64_t d_a() const { return int64_t{1} << n_a(); }
    int64_t d_b() const { return int64_t{1} << n_b(); }
    std::vector<int> a_sites() const;
    std::vector<int> b_sites() const;
    bool nontrivial() const { return n_a() > 0 && n_a() < n; }
};

// All cuts {0..k} for k = 0 .. n-2.
std::vector<Bipartition> contiguous_cuts(int n_qubits);

// Renyi index; alpha = 1 is the Shannon limit, alpha = 0 counts support
// above a weight threshold.
struct RenyiIndex {
    double alpha = 2.0;
    bool infinite = false;

    static RenyiIndex of(double a) { return RenyiIndex{a, false}; }
    static RenyiIndex inf() { return RenyiIndex{0.0, true}; }
};

inline constexpr double kSupportEps = 1e-8;

// Classical alpha-Renyi entropy in bits of a normalized distribution.
double renyi_entropy_bits(const std::vector<double>& probs, RenyiIndex alpha,
                          double support_eps = kSupportEps);

// Schmidt weights of the Choi state across the doubled-space bipartition,
// descending, summing to one.
std::vector<double> reduced_choi_spectrum(const ChoiVector& v, const Bipartition& b);

// Local-operator entanglement in bits.
double loe(const MatrixC& op, const Bipartition& b, RenyiIndex alpha);

// Operator purity 2^(-E^(2)) = sum of squared Schmidt weights.
double op_purity(const MatrixC& op, const Bipartition& b);
double op_purity(const ChoiVector& v, const Bipartition& b);

// Operator stabilizer entropy in bits. Inputs off unit Pauli norm by more
// than 1e-8 are normalized and reported through `warning`.
double ose(const MatrixC& op, RenyiIndex alpha, std::string* warning = nullptr);

struct NullityResult {
    int nu = 0;
    int64_t stab_count = 0;
    double tolerance = 1e-6;
    bool count_is_power_of_two = true;
    std::string diagnostics;
};

// nu(U) = 2N - log2 |Stab|, counting Paulis whose conjugation stays a signed
// Pauli within tolerance. Cost 4^N conjugations; N <= 5.
NullityResult unitary_nullity(const MatrixC& u, double eps = 1e-6);

// T-count witness from circuit metadata; throws if the circuit is not
// Clifford+T (RZ by an exact multiple of pi/2 counts as Clifford).
int t_count(const Circuit& c);

// Operator entanglement of U itself (the LOE machinery applied to |U>>).
double operator_entanglement_u(const MatrixC& u, const Bipartition& b, RenyiIndex alpha);

// Monte Carlo entangling power: mean state entanglement of
// U (U_A (x) U_Abar) |0...0> over Haar product unitaries.
Estimate entangling_power_mc(const MatrixC& u, const Bipartition& b, RenyiIndex alpha,
                             int64_t n_samples, uint64_t seed);

// Right-hand side of the operator-entanglement identity for an equal cut:
// D^2/(D+1)^2 (E(U) + E(U S) - (D^2-1)/D^2). Reported alongside the MC
// value; exactness for general alpha is not asserted.
double entangling_power_identity_rhs(const MatrixC& u, const Bipartition& b, RenyiIndex alpha);

MatrixC swap_unitary(const Bipartition& b);

}  // namespace opspace
