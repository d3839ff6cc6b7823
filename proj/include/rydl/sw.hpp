#pragma once

#include <string>
#include <vector>

#include "rydl/operators.hpp"

namespace rydl {

// Schrieffer-Wolff expansion of the staggered-detuning model about the
// Delta -> infinity integrable point. Order 1 and 3 vanish identically.
struct SWExpansion {
    double Omega = 1.0;
    double Delta = 1.0;
    SparseOperator generator;            // iS, anti-hermitian
    std::vector<SparseOperator> terms;   // orders 0..max_order, Z_pi projected

    // H_eff^[k] = sum of terms up to order k
    SparseOperator cumulative(int order) const;
};

// iS with [iS, H_z] = -H_x; single spin-flip structure, linear in Omega/Delta
SparseOperator sw_generator(const ConstrainedBasis& basis, double Omega, double Delta);

// closed-form second-order term for the 2-leg ladder: dressed staggered
// sigma^z plus fully blockaded rung XX+YY flips
SparseOperator heff2_analytic(const ConstrainedBasis& basis, double Omega, double Delta);

SWExpansion heff_numeric(const ConstrainedBasis& basis, double Omega, double Delta,
                         int max_order = 4);

// integer Z_pi eigenvalue per basis state
std::vector<int> zpi_labels(const ConstrainedBasis& basis);

// zero matrix elements between different Z_pi eigenspaces
SparseOperator project_zpi(const SparseOperator& op, const std::vector<int>& labels);

// Analytic eigenstates of H_eff^[2] on the 2-leg ladder: the vacuum, frozen
// zig-zag blocks, and Bell-type active rungs, labeled by conserved charges.
struct LabeledEigenstate {
    int z_pi = 0;
    std::vector<int> q;        // per-rung charges, +-1
    std::string tag;           // vacuum / block / bell / mixed
    int n_bell = 0;            // active rungs carrying a +- combination
    Eigen::VectorXcd vector;
    double energy = 0.0;
};

std::vector<LabeledEigenstate> enumerate_heff2_eigenstates(const ConstrainedBasis& basis,
                                                           double Omega, double Delta);

// classical-bit codec: bit -1 = one excitation on that rung
FockState encode_bits(const Lattice& lat, const std::vector<int>& bits);
std::vector<int> decode_bits(const std::vector<double>& q_expectations, double tol = 1e-6);

}  // namespace rydl
