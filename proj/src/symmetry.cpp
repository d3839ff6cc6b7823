#include "rydl/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace rydl {

namespace {
int order_of_shift(int L, int step) { return L / std::gcd(L, step); }
}  // namespace

SymmetrySector::SymmetrySector(const ConstrainedBasis& basis, SectorSpec spec) : spec_(spec) {
    const Lattice& lat = basis.lattice();
    const int N = lat.n_sites();

    int step_x = spec.use_full_tx ? 1 : 2;
    std::vector<int> px, py;
    if (spec.kx_index) {
        if (!lat.pbc_x) throw std::invalid_argument("build_sector: x momentum needs pbc_x");
        px = lat.perm_x();
        order_x_ = order_of_shift(lat.n_cols, step_x);
        if (*spec.kx_index < 0 || *spec.kx_index >= order_x_)
            throw std::invalid_argument("build_sector: invalid kx index");
    }
    if (spec.ky_index) {
        if (lat.n_legs < 2) throw std::invalid_argument("build_sector: y momentum needs >= 2 legs");
        py = lat.perm_y();
        order_y_ = lat.n_legs;
        if (*spec.ky_index < 0 || *spec.ky_index >= order_y_)
            throw std::invalid_argument("build_sector: invalid ky index");
    }

    // group elements (mx, my): shift x by mx*step_x columns, y by my legs
    struct Elem {
        int mx, my;
    };
    std::vector<Elem> group;
    for (int mx = 0; mx < order_x_; ++mx)
        for (int my = 0; my < order_y_; ++my) group.push_back({mx, my});

    auto apply_elem = [&](FockState s, int mx, int my) {
        for (int r = 0; r < mx * step_x; ++r) s = apply_perm(s, px, N);
        for (int r = 0; r < my; ++r) s = apply_perm(s, py, N);
        return s;
    };

    const int kx = spec.kx_index.value_or(0);
    const int ky = spec.ky_index.value_or(0);
    auto char_arg = [&](int mx, int my) {
        return 2.0 * std::numbers::pi * (double(kx * mx) / order_x_ + double(ky * my) / order_y_);
    };

    const auto& states = basis.states();
    std::vector<char> visited(states.size(), 0);
    std::vector<Triplet> trips;
    std::size_t col = 0;
    for (std::size_t si = 0; si < states.size(); ++si) {
        if (visited[si]) continue;
        FockState s = states[si];
        // orbit with group labels; the representative is the first-visited (lowest) state
        std::unordered_map<FockState, std::vector<Elem>> orbit;
        for (auto g : group) orbit[apply_elem(s, g.mx, g.my)].push_back(g);
        for (auto& [t, _] : orbit) visited[basis.index_of(t)] = 1;

        // compatibility: the character must be trivial on the stabilizer
        bool ok = true;
        for (auto g : orbit[s]) {
            double arg = char_arg(g.mx, g.my);
            if (std::abs(std::sin(arg / 2)) > 1e-12) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        std::size_t stab = orbit[s].size();
        double norm = 1.0 / std::sqrt(double(group.size()) * double(stab));
        for (auto& [t, gs] : orbit) {
            cplx amp = 0;
            for (auto g : gs) amp += std::polar(1.0, -char_arg(g.mx, g.my));
            trips.emplace_back(Eigen::Index(basis.index_of(t)), Eigen::Index(col), amp * norm);
        }
        reps_.push_back(s);
        norms_.push_back(std::sqrt(double(stab) / double(group.size())));
        ++col;
    }

    iso_.resize(Eigen::Index(states.size()), Eigen::Index(col));
    iso_.setFromTriplets(trips.begin(), trips.end());
    iso_.makeCompressed();
}

SparseOperator SymmetrySector::project(const SparseOperator& full_op) const {
    SpMat m = iso_.adjoint() * full_op.mat * iso_;
    m.prune([](Eigen::Index, Eigen::Index, const cplx& v) { return std::abs(v) > 1e-15; });
    return {std::move(m), full_op.hermitian};
}

SymmetrySector build_sector(const ConstrainedBasis& basis, int kx, int ky, bool use_full_tx) {
    return SymmetrySector(basis, SectorSpec{kx, ky, use_full_tx});
}
SymmetrySector build_sector(const ConstrainedBasis& basis, SectorSpec spec) {
    return SymmetrySector(basis, spec);
}

}  // namespace rydl
