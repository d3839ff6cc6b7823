#pragma once

#include <string>
#include <vector>

#include "rydl/basis.hpp"
#include "rydl/sparse_op.hpp"

namespace rydl {

inline constexpr double kMultiplierClamp = 50.0;
inline constexpr double kGgeCostTol = 1e-10;

// Infinite-time average of O from psi0 under H, degenerate pairs grouped.
double diagonal_ensemble_average(const SparseOperator& H, const Eigen::VectorXcd& psi0,
                                 const SparseOperator& O, double degeneracy_tol = 1e-10);

struct EnsembleFit {
    std::string kind;                  // "GE" or "GGE"
    std::vector<double> multipliers;   // beta | (beta, lambda_pi, lambda_1..L)
    double residual = 0.0;
    bool converged = false;
    bool boundary = false;             // clamped multipliers or extremal target

    // spectral data of the ensemble: weights w_k over the common eigenbasis
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
    Eigen::VectorXd weights;

    double expectation(const SparseOperator& O) const;
    Eigen::MatrixXcd density_matrix() const;
};

// beta solving Tr(rho_GE H) = <psi0|H|psi0> by bisection
EnsembleFit fit_ge(const SparseOperator& H, const Eigen::VectorXcd& psi0);
EnsembleFit fit_ge_target(const SparseOperator& H, double energy_target);

// Lagrange-multiplier fit of exp(-beta Heff2 - lambda_pi Zpi - sum lambda_j Qj);
// the charges must be diagonal in the Fock basis and commute with Heff2.
EnsembleFit fit_gge(const SparseOperator& Heff2, const SparseOperator& Zpi,
                    const std::vector<SparseOperator>& Qs, const Eigen::VectorXcd& psi0,
                    std::uint64_t restart_seed = 7);

}  // namespace rydl
