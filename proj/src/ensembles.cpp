#include "opspace/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace opspace {

EnsembleSpec EnsembleSpec::haar(int n) {
    return EnsembleSpec{EnsembleKind::Haar, n, 0, 0, 0, PauliString::single(n, 0, 'Z')};
}
EnsembleSpec EnsembleSpec::clifford(int n) {
    return EnsembleSpec{EnsembleKind::Clifford, n, 0, 0, 0, PauliString::single(n, 0, 'Z')};
}
EnsembleSpec EnsembleSpec::nu_compressible(int n, int ell) {
    if (ell < 0 || ell > n) throw std::invalid_argument("nu_compressible: ell out of range");
    return EnsembleSpec{EnsembleKind::NuCompressible, n, ell, 0, 0,
                        PauliString::single(n, 0, 'Z')};
}
EnsembleSpec EnsembleSpec::t_doped(int n, int tau) {
    if (tau < 0) throw std::invalid_argument("t_doped: tau < 0");
    return EnsembleSpec{EnsembleKind::TDoped, n, 0, tau, 0, PauliString::single(n, 0, 'Z')};
}

namespace {

std::vector<int> all_sites(int n) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = i;
    return s;
}

}  // namespace

EnsembleSample sample_ensemble(const EnsembleSpec& spec, Rng& rng) {
    int n = spec.n_qubits;
    if (n > kDenseQubitLimit) throw std::invalid_argument("sample_ensemble: n over dense limit");
    EnsembleSample out;
    out.circuit.n_qubits = n;
    switch (spec.kind) {
        case EnsembleKind::Haar: {
            out.u = sample_haar_unitary(int64_t{1} << n, rng);
            out.circuit.dense(all_sites(n), out.u);
            out.ell = n;
            out.tau = -1;  // no Clifford+T witness
            break;
        }
        case EnsembleKind::Clifford: {
            CliffordTableau c = sample_uniform_clifford(n, rng);
            out.u = tableau_to_dense(c);
            out.circuit = tableau_to_circuit(c);
            out.tableau = c;
            out.ell = 0;
            out.tau = 0;
            break;
        }
        case EnsembleKind::NuCompressible: {
            if (spec.ell == 0) {
                CliffordTableau c = sample_uniform_clifford(n, rng);
                out.u = tableau_to_dense(c);
                out.circuit.dense(all_sites(n), out.u);
                out.tableau = c;
                out.ell = 0;
                out.tau = -1;
                break;
            }
            MatrixC c1 = tableau_to_dense(sample_uniform_clifford(n, rng));
            MatrixC v = sample_haar_unitary(int64_t{1} << spec.ell, rng);
            MatrixC c0 = tableau_to_dense(sample_uniform_clifford(n, rng));
            std::vector<int> vsites(spec.ell);
            for (int i = 0; i < spec.ell; ++i) vsites[i] = i;
            out.u = c0 * embed(v, vsites, n) * c1;
            out.circuit.dense(all_sites(n), c1).dense(vsites, v).dense(all_sites(n), c0);
            out.ell = spec.ell;
            out.tau = -1;
            break;
        }
        case EnsembleKind::TDoped: {
            // U = C_0 T C_1 T ... T C_tau; gates run left to right, so the
            // synthesized layers are emitted in reverse order.
            std::vector<CliffordTableau> layers;
            layers.reserve(spec.tau + 1);
            for (int i = 0; i <= spec.tau; ++i) layers.push_back(sample_uniform_clifford(n, rng));
            MatrixC u = tableau_to_dense(layers[spec.tau]);
            MatrixC t_dense = embed(gate_matrix(Gate{GateKind::T, {spec.t_site}}),
                                    {spec.t_site}, n);
            for (int i = spec.tau - 1; i >= 0; --i) u = tableau_to_dense(layers[i]) * t_dense * u;
            for (int i = spec.tau; i >= 0; --i) {
                for (const Gate& g : tableau_to_circuit(layers[i]).gates) out.circuit.add(g);
                if (i > 0) out.circuit.t(spec.t_site);
            }
            out.u = std::move(u);
            out.ell = -1;
            out.tau = spec.tau;
            break;
        }
    }
    return out;
}

void parallel_for(int64_t n, int threads, const std::function<void(int64_t)>& body) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 2) {
        for (int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    int used = static_cast<int>(std::min<int64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(used);
    for (int t = 0; t < used; ++t) {
        int64_t lo = n * t / used, hi = n * (t + 1) / used;
        pool.emplace_back([lo, hi, &body] {
            for (int64_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

McPurityResult mc_purity(const EnsembleSpec& spec, const Bipartition& b, int64_t n_samples,
                         uint64_t seed, int threads) {
    if (n_samples < 2) throw std::invalid_argument("mc_purity: need n >= 2");
    if (b.n != spec.n_qubits) throw std::invalid_argument("mc_purity: bipartition size mismatch");
    McPurityResult out;
    out.purities.resize(static_cast<size_t>(n_samples));
    MatrixC initial_dense;
    if (spec.kind != EnsembleKind::Clifford) initial_dense = pauli_to_dense(spec.initial);
    parallel_for(n_samples, threads, [&](int64_t i) {
        Rng rng(stream_key(seed, static_cast<uint64_t>(i)));
        if (spec.kind == EnsembleKind::Clifford) {
            // Exact tableau path: the Heisenberg image is a signed Pauli, whose
            // Choi state is a product state across every cut.
            CliffordTableau c = sample_uniform_clifford(spec.n_qubits, rng);
            PauliString image = tableau_conjugate(c, spec.initial);
            if (image.phase_exp % 2 != 0)
                throw std::logic_error("mc_purity: non-Hermitian Clifford image");
            out.purities[static_cast<size_t>(i)] = 1.0;
            return;
        }
        EnsembleSample s = sample_ensemble(spec, rng);
        MatrixC o_u = heisenberg_conjugate(s.u, initial_dense);
        out.purities[static_cast<size_t>(i)] = op_purity(o_u, b);
    });
    out.estimate = make_estimate(out.purities, seed);
    return out;
}

HierarchyReport verify_hierarchy(const EnsembleSpec& spec, int64_t n_samples,
                                 const std::vector<double>& alphas, uint64_t seed, int threads) {
    if (spec.kind != EnsembleKind::Clifford && spec.kind != EnsembleKind::TDoped)
        throw std::invalid_argument("verify_hierarchy: needs a Clifford+T ensemble");
    if (spec.n_qubits > 5) throw std::invalid_argument("verify_hierarchy: N > 5 (nullity cost)");
    HierarchyReport rep;
    rep.n_samples = n_samples;
    auto cuts = contiguous_cuts(spec.n_qubits);
    std::vector<std::vector<HierarchyRow>> rows(static_cast<size_t>(n_samples));
    MatrixC initial_dense = pauli_to_dense(spec.initial);
    parallel_for(n_samples, threads, [&](int64_t i) {
        Rng rng(stream_key(seed, static_cast<uint64_t>(i)));
        EnsembleSample s = sample_ensemble(spec, rng);
        int tau = t_count(s.circuit);
        MatrixC o_u = heisenberg_conjugate(s.u, initial_dense);
        NullityResult nullity = unitary_nullity(s.u);
        auto& local = rows[static_cast<size_t>(i)];
        for (double a : alphas) {
            double m = ose(o_u, RenyiIndex::of(a));
            for (size_t ci = 0; ci < cuts.size(); ++ci) {
                double e = loe(o_u, cuts[ci], RenyiIndex::of(a));
                local.push_back(HierarchyRow{i, a, static_cast<int>(ci), e, m, nullity.nu, tau});
            }
        }
    });
    for (auto& local : rows)
        for (const HierarchyRow& r : local) {
            double worst = std::max({r.loe_bits - r.ose_bits, r.ose_bits - r.nu,
                                     static_cast<double>(r.nu - r.tau)});
            rep.max_excess = std::max(rep.max_excess, worst);
            if (r.loe_bits > r.ose_bits + kHierarchySlack || r.ose_bits > r.nu + kHierarchySlack ||
                r.nu > r.tau)
                ++rep.violations;
            rep.rows.push_back(r);
        }
    return rep;
}

}  // namespace opspace
