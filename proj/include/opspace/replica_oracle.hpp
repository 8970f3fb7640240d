#pragma once

#include "opspace/monotones.hpp"
#include "opspace/pauli.hpp"

namespace opspace {

// Dense four-replica objects for oracle checks at N <= 2 (dimension D^4).
// Replica r is digit r of the basis index, least significant first.

// Permutation operator T_sigma on (C^d)^(x4).
MatrixC t_perm_dense(int sigma, int64_t local_dim);

// Lambda+ = (1/D^2) sum_P P^(x4) over the 4^N Hermitian Pauli strings.
MatrixC lambda_plus_dense(int n_qubits);

// Purity permutation T': A-replicas permuted by (12)(34), Abar-replicas by
// (14)(23).
MatrixC t_prime_dense(const Bipartition& b);

MatrixC kron4(const MatrixC& a);

// All 24 single-qubit Clifford tableaux (6 symplectic matrices x 4 signs).
std::vector<class CliffordTableau> enumerate_single_qubit_cliffords();

}  // namespace opspace
