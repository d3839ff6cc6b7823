#pragma once

#include <cstdint>
#include <vector>

#include "rydl/operators.hpp"
#include "rydl/propagate.hpp"
#include "rydl/timeseries.hpp"

namespace rydl {

inline constexpr std::size_t kLindbladDimCap = 1500;
inline constexpr double kTraceDriftTol = 1e-6;

// Dephasing and spontaneous-emission jump channels, one per site.
struct JumpChannelSet {
    double gamma_d = 0.0;  // sqrt(gd) sigma^z_i
    double gamma_e = 0.0;  // sqrt(ge) sigma^-_i

    std::vector<SparseOperator> materialize(const ConstrainedBasis& basis) const;
};

// -i[H,rho] + sum_J (J rho J^+ - 1/2 {J^+J, rho})
Eigen::MatrixXcd lindblad_rhs(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                              const Eigen::MatrixXcd& rho);

struct LindbladOptions {
    double dt = kDefaultDt;
    double sample_dt = 0.1;
    int checkpoint_every = 100;   // trace/hermiticity/positivity checks
    std::size_t dim_cap = kLindbladDimCap;
};

TimeSeries evolve_lindblad(const ConstrainedBasis& basis, const SparseOperator& H,
                           const JumpChannelSet& channels, const Eigen::MatrixXcd& rho0,
                           double t_max, const std::vector<NamedObservable>& observables,
                           const LindbladOptions& opt = {});

struct McwfOptions {
    double dt = kDefaultDt;
    double sample_dt = 0.1;
};

// Norm-threshold quantum-jump unraveling; deterministic given the seed.
TimeSeries mcwf_trajectory(const ConstrainedBasis& basis, const SparseOperator& H,
                           const JumpChannelSet& channels, const Eigen::VectorXcd& psi0,
                           double t_max, std::uint64_t seed,
                           const std::vector<NamedObservable>& observables,
                           const McwfOptions& opt = {});

// mean and standard error over trajectories with derived per-index seeds
TimeSeries trajectory_average(const ConstrainedBasis& basis, const SparseOperator& H,
                              const JumpChannelSet& channels, const Eigen::VectorXcd& psi0,
                              double t_max, int n_traj, std::uint64_t master_seed,
                              const std::vector<NamedObservable>& observables,
                              const McwfOptions& opt = {}, int jobs = 0);

}  // namespace rydl
