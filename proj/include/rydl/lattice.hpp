#pragma once

#include <array>
#include <utility>
#include <vector>

#include "rydl/types.hpp"

namespace rydl {

// Ladder/chain/2D grid geometry. Columns j = 1..n_cols along x, legs
// a = 1..n_legs along y; site linear index i = (j-1)*n_legs + (a-1).
struct Lattice {
    int n_cols = 0;
    int n_legs = 0;
    bool pbc_x = true;
    bool pbc_y = true;
    std::vector<std::pair<int, int>> bonds;        // each unordered pair once
    std::vector<std::array<double, 2>> positions;  // lattice-constant units
    std::vector<std::vector<int>> neighbors;
    std::vector<std::uint64_t> neighbor_mask;      // bitmask of neighbors per site

    int n_sites() const { return n_cols * n_legs; }
    int site(int j, int a) const { return (j - 1) * n_legs + (a - 1); }  // 1-based j,a
    int col(int i) const { return i / n_legs + 1; }
    int leg(int i) const { return i % n_legs + 1; }
    // (-1)^j staggering sign of site i
    int stagger(int i) const { return col(i) % 2 == 0 ? +1 : -1; }

    // minimum-image squared distance between sites, per periodic axis
    double dist2(int i, int k) const;

    // site permutations for one-unit translations; require the axis periodic
    std::vector<int> perm_x() const;
    std::vector<int> perm_y() const;
};

Lattice build_lattice(int n_cols, int n_legs, bool pbc_x = true, bool pbc_y = true);

FockState apply_perm(FockState s, const std::vector<int>& perm, int n_sites);

}  // namespace rydl
