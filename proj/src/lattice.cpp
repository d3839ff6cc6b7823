#include "rydl/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rydl {

Lattice build_lattice(int n_cols, int n_legs, bool pbc_x, bool pbc_y) {
    if (n_cols < 2) throw std::invalid_argument("build_lattice: n_cols must be >= 2");
    if (n_legs < 1) throw std::invalid_argument("build_lattice: n_legs must be >= 1");
    if (n_cols * n_legs > 64) throw std::invalid_argument("build_lattice: N exceeds 64-bit word");

    Lattice lat;
    lat.n_cols = n_cols;
    lat.n_legs = n_legs;
    lat.pbc_x = pbc_x;
    lat.pbc_y = pbc_y;

    const int N = lat.n_sites();
    lat.positions.resize(N);
    for (int j = 1; j <= n_cols; ++j)
        for (int a = 1; a <= n_legs; ++a)
            lat.positions[lat.site(j, a)] = {double(j - 1), double(a - 1)};

    std::set<std::pair<int, int>> bonds;
    auto add = [&](int u, int v) {
        if (u == v) return;  // wrap collapsing to a self-pair (not a bond)
        bonds.insert({std::min(u, v), std::max(u, v)});
    };
    for (int j = 1; j <= n_cols; ++j) {
        for (int a = 1; a <= n_legs; ++a) {
            int i = lat.site(j, a);
            if (j < n_cols)
                add(i, lat.site(j + 1, a));
            else if (pbc_x)
                add(i, lat.site(1, a));  // set dedupes the doubled bond at n_cols=2
            if (a < n_legs)
                add(i, lat.site(j, a + 1));
            else if (pbc_y && n_legs > 2)
                add(i, lat.site(j, 1));  // a 2-leg rung is a single bond
        }
    }
    lat.bonds.assign(bonds.begin(), bonds.end());

    lat.neighbors.assign(N, {});
    lat.neighbor_mask.assign(N, 0);
    for (auto [u, v] : lat.bonds) {
        lat.neighbors[u].push_back(v);
        lat.neighbors[v].push_back(u);
        lat.neighbor_mask[u] |= (std::uint64_t(1) << v);
        lat.neighbor_mask[v] |= (std::uint64_t(1) << u);
    }
    return lat;
}

double Lattice::dist2(int i, int k) const {
    double dx = std::abs(positions[i][0] - positions[k][0]);
    if (pbc_x) dx = std::min(dx, n_cols - dx);
    double dy = std::abs(positions[i][1] - positions[k][1]);
    if (pbc_y && n_legs > 2) dy = std::min(dy, n_legs - dy);
    return dx * dx + dy * dy;
}

std::vector<int> Lattice::perm_x() const {
    if (!pbc_x) throw std::invalid_argument("perm_x: lattice is not periodic along x");
    std::vector<int> p(n_sites());
    for (int j = 1; j <= n_cols; ++j)
        for (int a = 1; a <= n_legs; ++a)
            p[site(j, a)] = site(j % n_cols + 1, a);
    return p;
}

std::vector<int> Lattice::perm_y() const {
    if (n_legs == 1) throw std::invalid_argument("perm_y: single-leg lattice");
    std::vector<int> p(n_sites());
    for (int j = 1; j <= n_cols; ++j)
        for (int a = 1; a <= n_legs; ++a)
            p[site(j, a)] = site(j, a % n_legs + 1);
    return p;
}

FockState apply_perm(FockState s, const std::vector<int>& perm, int n_sites) {
    FockState t = 0;
    for (int i = 0; i < n_sites; ++i)
        if ((s >> i) & 1) t |= (FockState(1) << perm[i]);
    return t;
}

}  // namespace rydl
