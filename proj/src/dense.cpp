#include "opspace/dense.hpp"

#include <Eigen/QR>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace opspace {

MatrixC sample_haar_unitary(int64_t dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("sample_haar_unitary: dim < 1");
    MatrixC g(dim, dim);
    for (int64_t j = 0; j < dim; ++j)
        for (int64_t i = 0; i < dim; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<MatrixC> qr(g);
    MatrixC q = qr.householderQ() * MatrixC::Identity(dim, dim);
    MatrixC r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int64_t j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a == 0.0) ? Complex(1, 0) : d / a;
    }
    return q;
}

bool is_unitary(const MatrixC& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - MatrixC::Identity(u.rows(), u.cols())).norm() <= tol;
}

MatrixC heisenberg_conjugate(const MatrixC& u, const MatrixC& op) {
    if (u.rows() != op.rows() || u.cols() != op.cols() || u.rows() != u.cols())
        throw std::invalid_argument("heisenberg_conjugate: dimension mismatch");
    return u.adjoint() * op * u;
}

ChoiVector choi_vector(const MatrixC& op) {
    int64_t dim = op.rows();
    if (dim != op.cols() || dim == 0 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("choi_vector: dimension not a power of two");
    double norm = op.norm();
    if (norm < 1e-14) throw std::invalid_argument("choi_vector: zero operator");
    ChoiVector v;
    v.n = std::countr_zero(static_cast<uint64_t>(dim));
    v.amps.resize(dim * dim);
    for (int64_t i = 0; i < dim; ++i)
        for (int64_t j = 0; j < dim; ++j) v.amps(i * dim + j) = op(i, j) / norm;
    return v;
}

void Circuit::add(Gate g) {
    for (int q : g.sites)
        if (q < 0 || q >= n_qubits) throw std::invalid_argument("Circuit: site out of range");
    if (g.kind == GateKind::CX && g.sites.size() != 2)
        throw std::invalid_argument("Circuit: CX needs two sites");
    if (g.kind == GateKind::CX && g.sites[0] == g.sites[1])
        throw std::invalid_argument("Circuit: CX control == target");
    if (g.kind != GateKind::CX && g.kind != GateKind::Dense && g.sites.size() != 1)
        throw std::invalid_argument("Circuit: single-qubit gate needs one site");
    if (g.kind == GateKind::Dense) {
        int64_t want = int64_t{1} << g.sites.size();
        if (g.block.rows() != want || g.block.cols() != want)
            throw std::invalid_argument("Circuit: DENSE block dimension mismatch");
    }
    if (g.kind == GateKind::T) ++t_count;
    gates.push_back(std::move(g));
}

Circuit& Circuit::dense(std::vector<int> sites, MatrixC block) {
    add({GateKind::Dense, std::move(sites), 0.0, std::move(block)});
    return *this;
}

MatrixC gate_matrix(const Gate& g) {
    const double isq2 = 1.0 / std::numbers::sqrt2;
    switch (g.kind) {
        case GateKind::H: {
            MatrixC m(2, 2);
            m << isq2, isq2, isq2, -isq2;
            return m;
        }
        case GateKind::S: {
            MatrixC m = MatrixC::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = Complex(0, 1);
            return m;
        }
        case GateKind::T: {
            MatrixC m = MatrixC::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = std::polar(1.0, std::numbers::pi / 4);
            return m;
        }
        case GateKind::RZ: {
            MatrixC m = MatrixC::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = std::polar(1.0, g.theta);
            return m;
        }
        case GateKind::CX: {
            // sites[0] = control = block qubit 0, sites[1] = target.
            MatrixC m = MatrixC::Zero(4, 4);
            m(0, 0) = 1.0;  // |c=0,t=0>
            m(2, 2) = 1.0;  // |c=0,t=1>
            m(3, 1) = 1.0;  // |c=1,t=0> -> |c=1,t=1>
            m(1, 3) = 1.0;
            return m;
        }
        case GateKind::Dense: return g.block;
    }
    throw std::logic_error("gate_matrix: unknown kind");
}

MatrixC embed(const MatrixC& block, const std::vector<int>& sites, int n_qubits) {
    if (n_qubits > kDenseQubitLimit) throw std::invalid_argument("embed: n over dense limit");
    int k = static_cast<int>(sites.size());
    int64_t bdim = int64_t{1} << k;
    if (block.rows() != bdim || block.cols() != bdim)
        throw std::invalid_argument("embed: block dimension mismatch");
    for (int q : sites)
        if (q < 0 || q >= n_qubits) throw std::invalid_argument("embed: site out of range");
    int64_t dim = int64_t{1} << n_qubits;
    MatrixC out = MatrixC::Zero(dim, dim);
    for (int64_t j = 0; j < dim; ++j) {
        int64_t bin = 0;
        for (int m = 0; m < k; ++m) bin |= ((j >> sites[m]) & 1) << m;
        int64_t rest = j;
        for (int m = 0; m < k; ++m) rest &= ~(int64_t{1} << sites[m]);
        for (int64_t bout = 0; bout < bdim; ++bout) {
            Complex val = block(bout, bin);
            if (val == Complex(0, 0)) continue;
            int64_t i = rest;
            for (int m = 0; m < k; ++m) i |= ((bout >> m) & 1) << sites[m];
            out(i, j) = val;
        }
    }
    return out;
}

MatrixC circuit_to_dense(const Circuit& c) {
    if (c.n_qubits > kDenseQubitLimit)
        throw std::invalid_argument("circuit_to_dense: n over dense limit");
    int64_t dim = int64_t{1} << c.n_qubits;
    MatrixC u = MatrixC::Identity(dim, dim);
    for (const Gate& g : c.gates) u = embed(gate_matrix(g), g.sites, c.n_qubits) * u;
    return u;
}

namespace {

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::CX: return "CX";
        case GateKind::T: return "T";
        case GateKind::RZ: return "RZ";
        case GateKind::Dense: return "DENSE";
    }
    return "?";
}

}  // namespace

nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["n"] = c.n_qubits;
    j["gates"] = nlohmann::json::array();
    for (const Gate& g : c.gates) {
        nlohmann::json e;
        e["g"] = kind_name(g.kind);
        e["q"] = g.sites;
        if (g.kind == GateKind::RZ) e["theta"] = g.theta;
        if (g.kind == GateKind::Dense) {
            nlohmann::json m = nlohmann::json::array();
            for (int64_t r = 0; r < g.block.rows(); ++r)
                for (int64_t col = 0; col < g.block.cols(); ++col)
                    m.push_back({g.block(r, col).real(), g.block(r, col).imag()});
            e["m"] = std::move(m);
        }
        j["gates"].push_back(std::move(e));
    }
    return j;
}

Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c;
    c.n_qubits = j.at("n").get<int>();
    if (c.n_qubits < 1) throw std::invalid_argument("circuit: n must be >= 1");
    size_t idx = 0;
    for (const auto& e : j.at("gates")) {
        std::string kind = e.at("g").get<std::string>();
        std::vector<int> sites = e.at("q").get<std::vector<int>>();
        std::string where = "gates[" + std::to_string(idx++) + "]";
        try {
            if (kind == "H") c.add({GateKind::H, sites});
            else if (kind == "S") c.add({GateKind::S, sites});
            else if (kind == "CX") c.add({GateKind::CX, sites});
            else if (kind == "T") c.add({GateKind::T, sites});
            else if (kind == "RZ") c.add({GateKind::RZ, sites, e.at("theta").get<double>()});
            else if (kind == "DENSE") {
                auto flat = e.at("m").get<std::vector<std::vector<double>>>();
                int64_t bdim = int64_t{1} << sites.size();
                if (flat.size() != static_cast<size_t>(bdim * bdim))
                    throw std::invalid_argument("DENSE entry count != 4^k");
                MatrixC block(bdim, bdim);
                for (int64_t r = 0; r < bdim; ++r)
                    for (int64_t col = 0; col < bdim; ++col) {
                        const auto& pair = flat[r * bdim + col];
                        if (pair.size() != 2) throw std::invalid_argument("DENSE entry not [re,im]");
                        block(r, col) = Complex(pair[0], pair[1]);
                    }
                c.dense(sites, std::move(block));
            } else {
                throw std::invalid_argument("unknown gate kind '" + kind + "'");
            }
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument(where + ": " + err.what());
        }
    }
    return c;
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open circuit file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("malformed circuit JSON in " + path + ": " + e.what());
    }
    try {
        return circuit_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad circuit JSON in " + path + ": " + e.what());
    }
}

}  // namespace opspace
