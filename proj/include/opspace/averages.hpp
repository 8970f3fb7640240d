#pragma once

#include "opspace/rational.hpp"
#include "opspace/sym4.hpp"

#include <cstdint>
#include <optional>

namespace opspace {

// Average Heisenberg operator purity over Haar dynamics for subsystem
// dimension D_A (exact closed form; pole region D <= 3 rejected).
Rational haar_avg_purity(int64_t D, int64_t D_A);

// Independent route to the same quantity: the 4-fold Haar Weingarten sum
// contracted with the purity boundary vector.
Rational haar_avg_purity_weingarten_sum(int64_t D, int64_t D_A);

// nu-compressible ensemble: chained 24x24 contraction of the six-index
// permutation sum (authoritative), and a closed-form cross-check.
// ell = ceil(nu/2) is the Haar-block width; ell = 0 returns exactly 1.
Rational nu_compressible_purity_sum(int n_qubits, int64_t d_a, int ell);
Rational nu_compressible_purity_closed(int n_qubits, int64_t d_a, int ell);

// T-doped Clifford ensemble. The assembled evaluator is exact for rotation
// angles that are multiples of pi/4 (theta = k pi/4). The closed-form
// cross-check exists for the half cut only and is reported, not trusted:
// it fails to reproduce the tau = 0 value 1.
Rational t_doped_purity_sum(int n_qubits, int64_t d_a, int tau, int theta_k_pi_over_4 = 1);
// Raw assembly without the tau = 0 analytic shortcut (the shortcut's oracle).
Rational t_doped_assembly_value(int n_qubits, int64_t d_a, int tau, int theta_k_pi_over_4 = 1);
double t_doped_purity_sum_general(int n_qubits, int64_t d_a, int tau, double theta);
Rational t_doped_purity_closed_halfcut(int n_qubits, int tau);

enum class BoundKind { Nu, Tau, Haar };

struct LoeBounds {
    double jensen_bound_bits = 0.0;   // -log2 of the exact average purity
    double leading_order_bits = 0.0;  // nu - 2, or log2(4/3) tau
};

// Lower bounds on average LOE at the half cut (N even).
LoeBounds loe_lower_bounds(BoundKind kind, int param, int n_qubits);

}  // namespace opspace
