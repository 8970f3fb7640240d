#include "opspace/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace opspace {

namespace {

void check_n(int n) {
    if (n < 1 || n > 63) throw std::invalid_argument("PauliString: n_qubits out of range");
}

// Letter code x + 2z: 0=I, 1=X, 2=Z, 3=Y.
inline int letter_code(uint64_t x, uint64_t z, int q) {
    return static_cast<int>(((x >> q) & 1) | (((z >> q) & 1) << 1));
}

// Phase i^g picked up by the single-qubit product a*b (letter codes).
// Cyclic order X->Y->Z->X gives +i, reversed gives -i.
constexpr int kMulPhase[4][4] = {
    //            I  X  Z  Y
    /* I */      {0, 0, 0, 0},
    /* X */      {0, 0, 3, 1},
    /* Z */      {0, 1, 0, 3},
    /* Y */      {0, 3, 1, 0},
};

const Complex kImagPow[4] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};

}  // namespace

PauliString PauliString::identity(int n_qubits) {
    check_n(n_qubits);
    return PauliString{n_qubits, 0, 0, 0};
}

PauliString PauliString::from_xz(int n_qubits, uint64_t x_mask, uint64_t z_mask, int phase) {
    check_n(n_qubits);
    uint64_t live = (n_qubits == 63) ? ~0ULL : ((1ULL << n_qubits) - 1);
    if ((x_mask & ~live) || (z_mask & ~live))
        throw std::invalid_argument("PauliString: mask exceeds n_qubits");
    return PauliString{n_qubits, x_mask, z_mask, ((phase % 4) + 4) % 4};
}

PauliString PauliString::single(int n_qubits, int site, char letter) {
    check_n(n_qubits);
    if (site < 0 || site >= n_qubits) throw std::invalid_argument("PauliString: site out of range");
    uint64_t b = 1ULL << site;
    switch (letter) {
        case 'I': return PauliString{n_qubits, 0, 0, 0};
        case 'X': return PauliString{n_qubits, b, 0, 0};
        case 'Y': return PauliString{n_qubits, b, b, 0};
        case 'Z': return PauliString{n_qubits, 0, b, 0};
        default: throw std::invalid_argument("PauliString: unknown letter");
    }
}

int PauliString::weight_y() const { return std::popcount(x & z); }

std::string PauliString::str() const {
    static const char* signs[4] = {"+", "+i", "-", "-i"};
    std::string out = signs[phase_exp];
    for (int q = 0; q < n; ++q) {
        static const char letters[4] = {'I', 'X', 'Z', 'Y'};
        out += letters[letter_code(x, z, q)];
    }
    return out;
}

PauliString parse_pauli(const std::string& text) {
    size_t pos = 0;
    int phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        bool neg = text[pos] == '-';
        ++pos;
        bool imag = false;
        if (pos < text.size() && text[pos] == 'i') {  // lowercase only; 'I' is the identity letter
            imag = true;
            ++pos;
        }
        phase = (neg ? 2 : 0) + (imag ? 1 : 0);
    }
    std::string letters = text.substr(pos);
    if (letters.empty()) throw std::invalid_argument("parse_pauli: no letters");
    int n = static_cast<int>(letters.size());
    PauliString p = PauliString::identity(n);
    p.phase_exp = phase;
    for (int q = 0; q < n; ++q) {
        switch (letters[q]) {
            case 'I': break;
            case 'X': p.x |= 1ULL << q; break;
            case 'Y': p.x |= 1ULL << q; p.z |= 1ULL << q; break;
            case 'Z': p.z |= 1ULL << q; break;
            default: throw std::invalid_argument("parse_pauli: unknown letter in " + text);
        }
    }
    return p;
}

PauliString pauli_mul(const PauliString& p, const PauliString& q) {
    if (p.n != q.n) throw std::invalid_argument("pauli_mul: mismatched n_qubits");
    int phase = p.phase_exp + q.phase_exp;
    uint64_t affected = p.x | p.z | q.x | q.z;
    while (affected) {
        int site = std::countr_zero(affected);
        affected &= affected - 1;
        phase += kMulPhase[letter_code(p.x, p.z, site)][letter_code(q.x, q.z, site)];
    }
    return PauliString{p.n, p.x ^ q.x, p.z ^ q.z, phase % 4};
}

bool pauli_commutes(const PauliString& p, const PauliString& q) {
    if (p.n != q.n) throw std::invalid_argument("pauli_commutes: mismatched n_qubits");
    return (std::popcount(p.x & q.z) + std::popcount(p.z & q.x)) % 2 == 0;
}

PauliString pauli_adjoint(const PauliString& p) {
    return PauliString{p.n, p.x, p.z, (4 - p.phase_exp) % 4};
}

PauliString pauli_transpose(const PauliString& p) {
    // Y^T = -Y, X and Z symmetric; i^phase is unaffected by transposition.
    return PauliString{p.n, p.x, p.z, (p.phase_exp + 2 * (p.weight_y() % 2)) % 4};
}

namespace {

// Column j of dense(P) has its single nonzero at row j ^ x with this value.
inline Complex column_value(const PauliString& p, uint64_t j) {
    int ph = (p.phase_exp + p.weight_y()) % 4;
    Complex v = kImagPow[ph];
    return (std::popcount(j & p.z) & 1) ? -v : v;
}

}  // namespace

MatrixC pauli_to_dense(const PauliString& p) {
    if (p.n > kDenseQubitLimit) throw std::invalid_argument("pauli_to_dense: n over dense limit");
    int64_t dim = int64_t{1} << p.n;
    MatrixC m = MatrixC::Zero(dim, dim);
    for (int64_t j = 0; j < dim; ++j) m(j ^ p.x, j) = column_value(p, j);
    return m;
}

MatrixC pauli_left_mul(const PauliString& p, const MatrixC& m) {
    int64_t dim = int64_t{1} << p.n;
    if (m.rows() != dim) throw std::invalid_argument("pauli_left_mul: dimension mismatch");
    MatrixC out(dim, m.cols());
    for (int64_t i = 0; i < dim; ++i) out.row(i) = column_value(p, i ^ p.x) * m.row(i ^ p.x);
    return out;
}

MatrixC pauli_right_mul(const MatrixC& m, const PauliString& p) {
    int64_t dim = int64_t{1} << p.n;
    if (m.cols() != dim) throw std::invalid_argument("pauli_right_mul: dimension mismatch");
    MatrixC out(m.rows(), dim);
    for (int64_t j = 0; j < dim; ++j) out.col(j) = column_value(p, j) * m.col(j ^ p.x);
    return out;
}

VectorR PauliSpectrum::probabilities() const { return coeffs.cwiseAbs2(); }

double PauliSpectrum::sum_sq() const { return coeffs.squaredNorm(); }

bool PauliSpectrum::is_real(double tol) const {
    for (int64_t i = 0; i < coeffs.size(); ++i)
        if (std::abs(coeffs(i).imag()) > tol) return false;
    return true;
}

PauliSpectrum pauli_transform(const MatrixC& op) {
    int64_t dim = op.rows();
    if (dim != op.cols() || dim == 0 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("pauli_transform: dimension not a power of two");
    int n = std::countr_zero(static_cast<uint64_t>(dim));
    MatrixC c = op;
    const Complex half(0.5, 0.0), ihalf(0.0, 0.5);
    for (int q = 0; q < n; ++q) {
        int64_t bq = int64_t{1} << q;
        for (int64_t col = 0; col < dim; ++col) {
            if (col & bq) continue;
            for (int64_t row = 0; row < dim; ++row) {
                if (row & bq) continue;
                Complex a = c(row, col);
                Complex b = c(row, col | bq);
                Complex cc = c(row | bq, col);
                Complex d = c(row | bq, col | bq);
                c(row, col) = (a + d) * half;        // I
                c(row, col | bq) = (b + cc) * half;  // X
                c(row | bq, col) = (b - cc) * ihalf; // Y
                c(row | bq, col | bq) = (a - d) * half;  // Z
            }
        }
    }
    // Slot (row bits r, col bits c) now holds the Pauli with x = r^c, z = r.
    PauliSpectrum s;
    s.n = n;
    s.coeffs.resize(dim * dim);
    for (int64_t col = 0; col < dim; ++col)
        for (int64_t row = 0; row < dim; ++row)
            s.coeffs(PauliSpectrum::flat_index(row ^ col, row, n)) = c(row, col);
    return s;
}

MatrixC inverse_pauli_transform(const PauliSpectrum& spectrum) {
    int n = spectrum.n;
    int64_t dim = int64_t{1} << n;
    MatrixC c(dim, dim);
    for (int64_t col = 0; col < dim; ++col)
        for (int64_t row = 0; row < dim; ++row)
            c(row, col) = spectrum.coeffs(PauliSpectrum::flat_index(row ^ col, row, n));
    const Complex iunit(0.0, 1.0);
    for (int q = 0; q < n; ++q) {
        int64_t bq = int64_t{1} << q;
        for (int64_t col = 0; col < dim; ++col) {
            if (col & bq) continue;
            for (int64_t row = 0; row < dim; ++row) {
                if (row & bq) continue;
                Complex ci = c(row, col);
                Complex cx = c(row, col | bq);
                Complex cy = c(row | bq, col);
                Complex cz = c(row | bq, col | bq);
                c(row, col) = ci + cz;
                c(row, col | bq) = cx - iunit * cy;
                c(row | bq, col) = cx + iunit * cy;
                c(row | bq, col | bq) = ci - cz;
            }
        }
    }
    return c;
}

}  // namespace opspace
