#pragma once

#include <optional>
#include <vector>

#include "rydl/basis.hpp"
#include "rydl/sparse_op.hpp"

namespace rydl {

// Which translation group to resolve. The Hamiltonian commutes with T_x^2 and
// T_y at any detuning, and with the full T_x only at zero staggering.
struct SectorSpec {
    std::optional<int> kx_index;  // momentum label along x; nullopt = do not resolve
    std::optional<int> ky_index;
    bool use_full_tx = false;     // T_x instead of T_x^2
};

// Momentum sector of a constrained basis under an abelian translation group,
// stored as representatives plus the isometry into the full basis.
class SymmetrySector {
  public:
    SymmetrySector(const ConstrainedBasis& parent, SectorSpec spec);

    std::size_t dim() const { return reps_.size(); }
    const SectorSpec& spec() const { return spec_; }
    const std::vector<FockState>& representatives() const { return reps_; }
    const std::vector<double>& normalizations() const { return norms_; }

    // columns are the orthonormal sector basis vectors in the parent basis
    const SpMat& isometry() const { return iso_; }

    // B^dagger A B; hermiticity is preserved
    SparseOperator project(const SparseOperator& full_op) const;

    // lift a sector vector to the parent basis
    Eigen::VectorXcd lift(const Eigen::VectorXcd& v) const { return iso_ * v; }

    int order_x() const { return order_x_; }
    int order_y() const { return order_y_; }

  private:
    SectorSpec spec_;
    std::vector<FockState> reps_;
    std::vector<double> norms_;  // sqrt(|stabilizer| / |G|)
    SpMat iso_;
    int order_x_ = 1, order_y_ = 1;
};

SymmetrySector build_sector(const ConstrainedBasis& basis, int kx_index, int ky_index,
                            bool use_full_tx = false);
SymmetrySector build_sector(const ConstrainedBasis& basis, SectorSpec spec);

}  // namespace rydl
