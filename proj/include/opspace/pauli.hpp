#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>

namespace opspace {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;

// Operators above this qubit count are never materialized densely.
inline constexpr int kDenseQubitLimit = 12;

// Signed N-qubit Pauli string. Masks hold one bit per qubit (qubit 0 is the
// least significant basis-index bit everywhere, including serialization).
// dense(P) = i^phase_exp * w_{N-1} x ... x w_0 with Hermitian letters
// w in {I,X,Y,Z}, letter (x,z): (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
struct PauliString {
    int n = 1;
    uint64_t x = 0;
    uint64_t z = 0;
    int phase_exp = 0;  // power of i, mod 4

    static PauliString identity(int n_qubits);
    static PauliString from_xz(int n_qubits, uint64_t x_mask, uint64_t z_mask, int phase = 0);
    // Single Hermitian letter on one site, identity elsewhere.
    static PauliString single(int n_qubits, int site, char letter);

    bool is_identity_letters() const { return x == 0 && z == 0; }
    bool is_hermitian() const { return phase_exp % 2 == 0; }
    int weight_y() const;

    bool operator==(const PauliString& o) const = default;

    std::string str() const;
};

// Text form "+XIZY" (sign, then letters with qubit 0 leftmost).
PauliString parse_pauli(const std::string& text);

// Exact group product: dense(result) = dense(p) * dense(q).
PauliString pauli_mul(const PauliString& p, const PauliString& q);

// True iff the dense matrices commute (symplectic form parity).
bool pauli_commutes(const PauliString& p, const PauliString& q);

PauliString pauli_adjoint(const PauliString& p);
PauliString pauli_transpose(const PauliString& p);

MatrixC pauli_to_dense(const PauliString& p);

// dense(p) * m and m * dense(p) without materializing dense(p).
MatrixC pauli_left_mul(const PauliString& p, const MatrixC& m);
MatrixC pauli_right_mul(const MatrixC& m, const PauliString& p);

// All 4^N Pauli coefficients c_P = tr[O P] / D of an operator.
struct PauliSpectrum {
    int n = 1;
    VectorC coeffs;  // flat index (z_mask << n) | x_mask

    static int64_t flat_index(uint64_t x_mask, uint64_t z_mask, int n) {
        return static_cast<int64_t>((z_mask << n) | x_mask);
    }
    Complex coeff(uint64_t x_mask, uint64_t z_mask) const {
        return coeffs(flat_index(x_mask, z_mask, n));
    }
    // Squared magnitudes |c_P|^2; sums to tr[O^dag O]/D.
    VectorR probabilities() const;
    double sum_sq() const;
    bool is_real(double tol = 1e-10) const;
};

// Recursive per-qubit block transform, O(N 4^N).
PauliSpectrum pauli_transform(const MatrixC& op);
MatrixC inverse_pauli_transform(const PauliSpectrum& spectrum);

}  // namespace opspace
