#pragma once

#include <cstdint>
#include <vector>

#include "rydl/entanglement.hpp"
#include "rydl/operators.hpp"
#include "rydl/symmetry.hpp"

namespace rydl {

inline constexpr double kPoissonMeanR = 0.38629436111989063;  // 2 ln 2 - 1
inline constexpr double kGoeMeanR = 0.5295;

// Consecutive level-spacing-ratio statistics of one symmetry sector.
struct SpectrumReport {
    std::vector<double> energies;   // sorted, degeneracies collapsed
    std::vector<double> r_values;
    double mean_r = 0.0;
    std::vector<double> hist_edges;
    std::vector<double> hist_density;  // integrates to 1
    int zero_mode_count = 0;
    double reflection_residual = 0.0;  // max |E_k + E_{D-1-k}|
};

SpectrumReport level_spacing_stats(std::vector<double> energies, double degeneracy_tol,
                                   int hist_bins = 20);

struct DisorderAverage {
    double mean_r = 0.0;
    double stderr_r = 0.0;
    std::vector<double> per_realization;
};

// <r> of H_dis in a T_y momentum sector, averaged over disorder realizations
// with seeds derived from (master_seed, index); bit-reproducible.
DisorderAverage disorder_averaged_r(const ConstrainedBasis& basis, double Omega, double Delta,
                                    double eta, int ky_index, int n_realizations,
                                    std::uint64_t master_seed, int jobs = 0);

int zero_mode_count(const SparseOperator& H, double tol);

// regularized adiabatic-gauge-potential norm per Hilbert-space dimension
double agp_norm(const SparseOperator& H, const SparseOperator& dH, double zeta);

// default regulator N ln N / D_H
double agp_default_zeta(int n_sites, std::size_t dim);

struct PageEstimate {
    double mean = 0.0;
    double stderr_mean = 0.0;
    int n_samples = 0;
};

// Monte Carlo average entropy of Haar-random states, optionally within a sector
PageEstimate page_value_estimate(const ConstrainedBasis& basis, const Cut& cut, int n_samples,
                                 std::uint64_t seed, const SymmetrySector* sector = nullptr,
                                 int jobs = 0);

}  // namespace rydl
