#pragma once

#include "opspace/pauli.hpp"
#include "opspace/rng.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace opspace {

// Clifford unitary as the images of the 2N Pauli generators under C^dag . C.
// Row k < N is the image of X_k, row N+k the image of Z_k; every row is a
// Hermitian signed Pauli (phase_exp 0 or 2). The (x|z) mask rows form a
// symplectic matrix over GF(2) with respect to Omega = [[0,I],[I,0]].
class CliffordTableau {
  public:
    explicit CliffordTableau(int n_qubits);  // identity

    static CliffordTableau identity(int n_qubits) { return CliffordTableau(n_qubits); }
    // Elementary gates (H, S, CX) as tableaux embedded in n qubits.
    static CliffordTableau hadamard(int n_qubits, int site);
    static CliffordTableau phase_gate(int n_qubits, int site);
    static CliffordTableau cnot(int n_qubits, int control, int target);

    int n_qubits() const { return n_; }
    const PauliString& image_x(int q) const { return rows_[q]; }
    const PauliString& image_z(int q) const { return rows_[n_ + q]; }
    const PauliString& row(int k) const { return rows_[k]; }

    bool operator==(const CliffordTableau& o) const = default;

    // GF(2) data: 2N rows, bit j = x_j, bit N+j = z_j.
    std::vector<std::vector<int>> symplectic_rows() const;
    std::vector<int> phase_bits() const;
    bool satisfies_symplectic() const;

    friend CliffordTableau tableau_from_rows(int n, std::vector<PauliString> rows);

  private:
    int n_;
    std::vector<PauliString> rows_;
};

CliffordTableau tableau_from_rows(int n, std::vector<PauliString> rows);

// C^dag P C, exact.
PauliString tableau_conjugate(const CliffordTableau& c, const PauliString& p);

// Applies c1 first, then c2.
CliffordTableau tableau_compose(const CliffordTableau& c1, const CliffordTableau& c2);
CliffordTableau tableau_inverse(const CliffordTableau& c);

// Exactly uniform over the Clifford group modulo global phase: a uniformly
// random symplectic matrix (built pair by pair in the symplectic complement)
// plus independent sign bits.
CliffordTableau sample_uniform_clifford(int n_qubits, Rng& rng);

// Unitary matrix realizing the tableau, global phase fixed by making the
// first nonzero entry (column-major scan) real positive.
MatrixC tableau_to_dense(const CliffordTableau& c);

// H/S/CX gate word realizing the tableau (up to global phase), by a
// Gaussian sweep of the generator images.
struct Circuit;
Circuit tableau_to_circuit(const CliffordTableau& c);

nlohmann::json tableau_to_json(const CliffordTableau& c);
CliffordTableau tableau_from_json(const nlohmann::json& j);

}  // namespace opspace
