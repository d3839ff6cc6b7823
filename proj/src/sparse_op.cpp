#include "rydl/sparse_op.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

namespace rydl {

double SparseOperator::max_abs() const {
    double m = 0;
    for (int k = 0; k < mat.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

bool SparseOperator::is_hermitian(double tol) const {
    SpMat d = mat - SpMat(mat.adjoint());
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it)
            if (std::abs(it.value()) > tol) return false;
    return true;
}

SparseOperator from_triplets(Eigen::Index dim, const std::vector<Triplet>& trips, bool hermitian) {
    SpMat m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    m.prune([](Eigen::Index, Eigen::Index, const cplx& v) { return std::abs(v) > 0.0; });
    m.makeCompressed();
    return {std::move(m), hermitian};
}

SparseOperator op_add(const SparseOperator& a, const SparseOperator& b) {
    return {SpMat(a.mat + b.mat), a.hermitian && b.hermitian};
}
SparseOperator op_sub(const SparseOperator& a, const SparseOperator& b) {
    return {SpMat(a.mat - b.mat), a.hermitian && b.hermitian};
}
SparseOperator op_scale(const SparseOperator& a, cplx f) {
    return {SpMat(a.mat * f), a.hermitian && f.imag() == 0.0};
}
SparseOperator op_mul(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("op_mul: dimension mismatch");
    return {SpMat(a.mat * b.mat), false};
}
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("commutator: dimension mismatch");
    return {SpMat(a.mat * b.mat - b.mat * a.mat), false};
}
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("anticommutator: dimension mismatch");
    return {SpMat(a.mat * b.mat + b.mat * a.mat), false};
}

double anticommutator_norm(const SparseOperator& a, const SparseOperator& b) {
    return anticommutator(a, b).max_abs();
}
double commutator_norm(const SparseOperator& a, const SparseOperator& b) {
    return commutator(a, b).max_abs();
}

void export_triplets(std::ostream& os, const SparseOperator& op) {
    std::vector<std::tuple<Eigen::Index, Eigen::Index, cplx>> entries;
    for (int k = 0; k < op.mat.outerSize(); ++k)
        for (SpMat::InnerIterator it(op.mat, k); it; ++it)
            entries.emplace_back(it.row(), it.col(), it.value());
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
        return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
    });
    os.precision(17);
    for (auto& [r, c, v] : entries)
        os << r << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
}

}  // namespace rydl
