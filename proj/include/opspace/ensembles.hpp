#pragma once

#include "opspace/clifford.hpp"
#include "opspace/dense.hpp"
#include "opspace/monotones.hpp"
#include "opspace/stats.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace opspace {

enum class EnsembleKind { Haar, Clifford, NuCompressible, TDoped };

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::Haar;
    int n_qubits = 4;
    int ell = 0;  // Haar-block width for mu_nu
    int tau = 0;  // T-gate count for mu_tau
    int t_site = 0;
    PauliString initial = PauliString::single(4, 0, 'Z');

    static EnsembleSpec haar(int n);
    static EnsembleSpec clifford(int n);
    static EnsembleSpec nu_compressible(int n, int ell);
    static EnsembleSpec t_doped(int n, int tau);
};

struct EnsembleSample {
    MatrixC u;
    Circuit circuit;
    int ell = 0;
    int tau = 0;
    // Present for the Clifford ensemble: the exact tableau behind `u`.
    std::optional<CliffordTableau> tableau;
};

EnsembleSample sample_ensemble(const EnsembleSpec& spec, Rng& rng);

// Chunked index-parallel loop; results must be written to per-index slots.
void parallel_for(int64_t n, int threads, const std::function<void(int64_t)>& body);

struct McPurityResult {
    Estimate estimate;
    std::vector<double> purities;  // per-sample, index order
};

// Monte Carlo mean operator purity of O_U over the ensemble. Deterministic in
// (spec, n, seed) for any thread count.
McPurityResult mc_purity(const EnsembleSpec& spec, const Bipartition& b, int64_t n_samples,
                         uint64_t seed, int threads = 1);

struct HierarchyRow {
    int64_t sample = 0;
    double alpha = 0.0;
    int cut = 0;  // contiguous cut index: A = {0..cut}
    double loe_bits = 0.0;
    double ose_bits = 0.0;
    int nu = 0;
    int tau = 0;
};

struct HierarchyReport {
    int64_t n_samples = 0;
    int64_t violations = 0;
    // Worst observed (lhs - rhs) over all bound checks, in bits; negative or
    // ~1e-16 when the hierarchy holds.
    double max_excess = -1e300;
    std::vector<HierarchyRow> rows;
};

// Per-sample (E, M, nu, tau) tuples over all contiguous cuts with slack 1e-9.
HierarchyReport verify_hierarchy(const EnsembleSpec& spec, int64_t n_samples,
                                 const std::vector<double>& alphas, uint64_t seed,
                                 int threads = 1);

inline constexpr double kHierarchySlack = 1e-9;

}  // namespace opspace
