#pragma once

#include <vector>

#include "rydl/basis.hpp"
#include "rydl/sparse_op.hpp"
#include "rydl/symmetry.hpp"

namespace rydl {

// Bipartition by site sets. LR splits the columns at L/2, UD keeps leg 1.
struct Cut {
    std::vector<int> sites;  // subsystem X; complement is the rest

    static Cut lr(const Lattice& lat);
    static Cut ud(const Lattice& lat);
    static Cut custom(std::vector<int> sites);
};

// blockade-legal patterns on a site subset (bonds internal to the subset)
std::vector<FockState> subsystem_basis(const Lattice& lat, const std::vector<int>& sites);

// coefficient matrix psi_{alpha,beta} over the open-boundary subsystem bases;
// joint patterns that violate the full constraint carry zero weight
Eigen::MatrixXcd embed(const ConstrainedBasis& basis, const Eigen::VectorXcd& psi, const Cut& cut);

// von Neumann entropy (natural log) across the cut
double vn_entropy(const ConstrainedBasis& basis, const Eigen::VectorXcd& psi, const Cut& cut);

double mutual_information(const ConstrainedBasis& basis, const Eigen::VectorXcd& psi,
                          const std::vector<int>& X, const std::vector<int>& Y);

// (E, S) for every eigenvector of H, sorted by energy; when a sector is given,
// H must live in that sector and eigenvectors are lifted before the cut
std::vector<std::pair<double, double>> eigenstate_entropy_scan(
    const ConstrainedBasis& basis, const SparseOperator& H, const Cut& cut,
    const SymmetrySector* sector = nullptr);

}  // namespace rydl
