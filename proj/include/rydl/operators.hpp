#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rydl/basis.hpp"
#include "rydl/sparse_op.hpp"

namespace rydl {

// Per-site detuning in units of Omega.
struct DetuningProfile {
    std::vector<double> delta;

    static DetuningProfile staggered(const Lattice& lat, double Delta);
    static DetuningProfile staggered_flipped(const Lattice& lat, double Delta0);
    // (-1)^j (Delta + eta R_j), R_j uniform in [0,1) per column, shared by legs
    static DetuningProfile disordered(const Lattice& lat, double Delta, double eta,
                                      std::uint64_t seed);
};

// H = Omega sum_i sigma~x_i - sum_i delta_i sigma^z_i on the constrained basis.
SparseOperator build_pxp_z(const ConstrainedBasis& basis, double Omega,
                           const DetuningProfile& profile);

enum class LongRangeMode { FullUnconstrained, EffBeyondNN1, NN2Only, NN12, BlockadedPxp };

inline constexpr int kFullSpaceDefaultCap = 16;

// Van der Waals models of Appendix-style truncations. FullUnconstrained acts on
// the full 2^N space (basis argument supplies the lattice; dim is 2^N), all
// other modes act on the constrained basis.
SparseOperator build_longrange(const ConstrainedBasis& basis, double Omega,
                               const DetuningProfile& profile, double V0, LongRangeMode mode,
                               int full_space_cap = kFullSpaceDefaultCap);

enum class Chirality { C, C1, C2 };

// C = prod sigma^z (diagonal +-1); C1 = T_x C; C2 = T_x T_y C. All unitary.
SparseOperator chirality(const ConstrainedBasis& basis, Chirality which);

// diagonal unitary exp(-i (pi - eps) N_hat)
SparseOperator pulse_operator(const ConstrainedBasis& basis, double eps);

// permutation matrix of a one-unit translation
SparseOperator translation_operator(const ConstrainedBasis& basis, Axis axis);

enum class ObservableKind {
    Mz,        // sum sigma^z / N
    Zpi,       // sum (-1)^j sigma^z
    Q,         // sigma^z_{j,1} sigma^z_{j,2} (needs j)
    Q3,        // sigma^z_{j,1} sigma^z_{j,2} sigma^z_{j,3} (3-leg; needs j)
    H1body,    // h_{j,a} = sigma^z_{j,a} - sigma~x_{j,a} (needs j, a)
    Nexc,      // sum n_i
    DDelta,    // dH/dDelta = -sum (-1)^j sigma^z
    Sz,        // sigma^z_{j,a} (needs j, a)
};

SparseOperator observable(const ConstrainedBasis& basis, ObservableKind kind, int j = 0, int a = 0);

// named helpers used across modules
SparseOperator observable_mz(const ConstrainedBasis& basis);
SparseOperator observable_zpi(const ConstrainedBasis& basis);
SparseOperator observable_q(const ConstrainedBasis& basis, int j);
SparseOperator observable_h(const ConstrainedBasis& basis, int j, int a);
SparseOperator observable_n(const ConstrainedBasis& basis);
SparseOperator observable_ddelta(const ConstrainedBasis& basis);

}  // namespace rydl
