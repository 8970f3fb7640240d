#pragma once

#include "opspace/pauli.hpp"
#include "opspace/rng.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace opspace {

// Haar-distributed unitary on U(dim): complex Ginibre, QR, and the diagonal
// phase correction from the triangular factor.
MatrixC sample_haar_unitary(int64_t dim, Rng& rng);

bool is_unitary(const MatrixC& u, double tol = 1e-10);

// U^dag O U.
MatrixC heisenberg_conjugate(const MatrixC& u, const MatrixC& op);

// Normalized Choi state (O (x) 1)|phi+>; amps are out-major:
// amps[i*D + j] = O(i,j)/sqrt(D), then normalized.
struct ChoiVector {
    int n = 1;
    VectorC amps;  // size D^2

    int64_t dim() const { return int64_t{1} << n; }
};

ChoiVector choi_vector(const MatrixC& op);

enum class GateKind { H, S, CX, T, RZ, Dense };

struct Gate {
    GateKind kind;
    std::vector<int> sites;
    double theta = 0.0;  // RZ only
    MatrixC block;       // Dense only; dimension 2^|sites|
};

// Gate list applied left to right; t_count tracks the number of T gates as
// an upper-bound witness.
struct Circuit {
    int n_qubits = 1;
    std::vector<Gate> gates;
    int t_count = 0;

    void add(Gate g);
    Circuit& h(int q) { add({GateKind::H, {q}}); return *this; }
    Circuit& s(int q) { add({GateKind::S, {q}}); return *this; }
    Circuit& cx(int c, int t) { add({GateKind::CX, {c, t}}); return *this; }
    Circuit& t(int q) { add({GateKind::T, {q}}); return *this; }
    Circuit& rz(int q, double theta) { add({GateKind::RZ, {q}, theta}); return *this; }
    Circuit& dense(std::vector<int> sites, MatrixC block);
};

MatrixC gate_matrix(const Gate& g);

// Places a 2^k x 2^k block on the given sites (block qubit m <-> sites[m],
// qubit 0 = least significant bit), identity elsewhere.
MatrixC embed(const MatrixC& block, const std::vector<int>& sites, int n_qubits);

MatrixC circuit_to_dense(const Circuit& c);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);
Circuit load_circuit(const std::string& path);

}  // namespace opspace
