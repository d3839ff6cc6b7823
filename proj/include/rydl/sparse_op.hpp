#pragma once

#include <iosfwd>
#include <vector>

#include "rydl/types.hpp"

namespace rydl {

// Sparse complex operator over a fixed basis (constrained or full 2^N).
struct SparseOperator {
    SpMat mat;
    bool hermitian = false;

    SparseOperator() = default;
    SparseOperator(SpMat m, bool herm) : mat(std::move(m)), hermitian(herm) {}

    Eigen::Index dim() const { return mat.rows(); }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return mat * v; }
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat); }

    double max_abs() const;
    bool is_hermitian(double tol = 1e-12) const;

    SparseOperator adjoint() const { return {SpMat(mat.adjoint()), hermitian}; }
};

SparseOperator from_triplets(Eigen::Index dim, const std::vector<Triplet>& trips, bool hermitian);

SparseOperator op_add(const SparseOperator& a, const SparseOperator& b);
SparseOperator op_sub(const SparseOperator& a, const SparseOperator& b);
SparseOperator op_scale(const SparseOperator& a, cplx factor);
SparseOperator op_mul(const SparseOperator& a, const SparseOperator& b);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);

// max-abs entry of AB + BA
double anticommutator_norm(const SparseOperator& a, const SparseOperator& b);
double commutator_norm(const SparseOperator& a, const SparseOperator& b);

// triplet text "row col re im", one entry per line, row-major sorted
void export_triplets(std::ostream& os, const SparseOperator& op);

}  // namespace rydl
