#include "rydl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "rydl/rng.hpp"

namespace rydl {

DetuningProfile DetuningProfile::staggered(const Lattice& lat, double Delta) {
    DetuningProfile p;
    p.delta.resize(lat.n_sites());
    for (int i = 0; i < lat.n_sites(); ++i) p.delta[i] = lat.stagger(i) * Delta;
    return p;
}

DetuningProfile DetuningProfile::staggered_flipped(const Lattice& lat, double Delta0) {
    DetuningProfile p;
    p.delta.resize(lat.n_sites());
    for (int i = 0; i < lat.n_sites(); ++i) p.delta[i] = -lat.stagger(i) * Delta0;
    return p;
}

DetuningProfile DetuningProfile::disordered(const Lattice& lat, double Delta, double eta,
                                            std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> R(lat.n_cols);
    for (auto& r : R) r = uniform01(gen);
    DetuningProfile p;
    p.delta.resize(lat.n_sites());
    for (int i = 0; i < lat.n_sites(); ++i)
        p.delta[i] = lat.stagger(i) * (Delta + eta * R[lat.col(i) - 1]);
    return p;
}

SparseOperator build_pxp_z(const ConstrainedBasis& basis, double Omega,
                           const DetuningProfile& profile) {
    const Lattice& lat = basis.lattice();
    const int N = lat.n_sites();
    if (int(profile.delta.size()) != N)
        throw std::invalid_argument("build_pxp_z: profile/basis mismatch");

    std::vector<Triplet> trips;
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState s = basis.state(si);
        double diag = 0;
        for (int i = 0; i < N; ++i) {
            int z = ((s >> i) & 1) ? +1 : -1;
            diag -= profile.delta[i] * z;
        }
        if (diag != 0) trips.emplace_back(si, si, diag);
        for (int i = 0; i < N; ++i) {
            if (s & lat.neighbor_mask[i]) continue;  // projector: all neighbors ground
            FockState t = s ^ (FockState(1) << i);
            trips.emplace_back(Eigen::Index(basis.index_of(t)), Eigen::Index(si), Omega);
        }
    }
    return from_triplets(basis.dim(), trips, true);
}

namespace {

// distinct squared neighbor distances, ascending
std::vector<double> distance2_ladder(const Lattice& lat) {
    std::set<double> d2;
    const int N = lat.n_sites();
    for (int i = 0; i < N; ++i)
        for (int k = i + 1; k < N; ++k) d2.insert(lat.dist2(i, k));
    return {d2.begin(), d2.end()};
}

bool pair_selected(double d2, double d2_1, double d2_2, LongRangeMode mode) {
    const double tol = 1e-9;
    switch (mode) {
        case LongRangeMode::FullUnconstrained: return true;
        case LongRangeMode::EffBeyondNN1: return d2 > 1.0 + tol;
        case LongRangeMode::NN2Only: return std::abs(d2 - d2_2) < tol;
        case LongRangeMode::NN12:
            return std::abs(d2 - d2_1) < tol || std::abs(d2 - d2_2) < tol;
        case LongRangeMode::BlockadedPxp: return false;
    }
    return false;
}

}  // namespace

SparseOperator build_longrange(const ConstrainedBasis& basis, double Omega,
                               const DetuningProfile& profile, double V0, LongRangeMode mode,
                               int full_space_cap) {
    const Lattice& lat = basis.lattice();
    const int N = lat.n_sites();
    if (int(profile.delta.size()) != N)
        throw std::invalid_argument("build_longrange: profile/basis mismatch");

    auto dists = distance2_ladder(lat);
    double d2_1 = dists.size() > 0 ? dists[0] : 0;
    double d2_2 = dists.size() > 1 ? dists[1] : d2_1;

    struct Pair {
        int i, k;
        double v;
    };
    std::vector<Pair> pairs;
    for (int i = 0; i < N; ++i)
        for (int k = i + 1; k < N; ++k) {
            double d2 = lat.dist2(i, k);
            if (pair_selected(d2, d2_1, d2_2, mode))
                pairs.push_back({i, k, V0 / (d2 * d2 * d2)});
        }

    if (mode == LongRangeMode::FullUnconstrained) {
        if (N > full_space_cap)
            throw resource_cap("build_longrange: full space needs 2^" + std::to_string(N) +
                               " states; raise the cap to proceed");
        const std::size_t dim = std::size_t(1) << N;
        std::vector<Triplet> trips;
        trips.reserve(dim * (N + 1));
        for (std::size_t s = 0; s < dim; ++s) {
            double diag = 0;
            for (int i = 0; i < N; ++i) {
                int z = ((s >> i) & 1) ? +1 : -1;
                diag -= profile.delta[i] * z;
            }
            for (auto& p : pairs)
                if ((s >> p.i) & 1 && (s >> p.k) & 1) diag += p.v;
            if (diag != 0) trips.emplace_back(s, s, diag);
            for (int i = 0; i < N; ++i)
                trips.emplace_back(Eigen::Index(s ^ (std::size_t(1) << i)), Eigen::Index(s), Omega);
        }
        return from_triplets(Eigen::Index(dim), trips, true);
    }

    SparseOperator H = build_pxp_z(basis, Omega, profile);
    if (mode == LongRangeMode::BlockadedPxp) return H;
    std::vector<Triplet> trips;
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState s = basis.state(si);
        double diag = 0;
        for (auto& p : pairs)
            if ((s >> p.i) & 1 && (s >> p.k) & 1) diag += p.v;
        if (diag != 0) trips.emplace_back(si, si, diag);
    }
    return op_add(H, from_triplets(basis.dim(), trips, true));
}

namespace {
int popcount64(FockState s) { return int(__builtin_popcountll(s)); }
}  // namespace

SparseOperator chirality(const ConstrainedBasis& basis, Chirality which) {
    const Lattice& lat = basis.lattice();
    const int N = lat.n_sites();
    std::vector<Triplet> trips;
    std::vector<int> perm;
    if (which == Chirality::C1) {
        perm = lat.perm_x();
    } else if (which == Chirality::C2) {
        auto px = lat.perm_x();
        auto py = lat.perm_y();
        perm.resize(N);
        for (int i = 0; i < N; ++i) perm[i] = py[px[i]];
    }
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState s = basis.state(si);
        double sign = (N - popcount64(s)) % 2 == 0 ? +1.0 : -1.0;  // prod sigma^z
        FockState t = perm.empty() ? s : apply_perm(s, perm, N);
        trips.emplace_back(Eigen::Index(basis.index_of(t)), Eigen::Index(si), sign);
    }
    return from_triplets(basis.dim(), trips, which == Chirality::C);
}

SparseOperator pulse_operator(const ConstrainedBasis& basis, double eps) {
    std::vector<Triplet> trips;
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        int n = popcount64(basis.state(si));
        trips.emplace_back(si, si, std::polar(1.0, -(std::numbers::pi - eps) * n));
    }
    return from_triplets(basis.dim(), trips, false);
}

SparseOperator translation_operator(const ConstrainedBasis& basis, Axis axis) {
    const Lattice& lat = basis.lattice();
    auto perm = (axis == Axis::X) ? lat.perm_x() : lat.perm_y();
    std::vector<Triplet> trips;
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState t = apply_perm(basis.state(si), perm, lat.n_sites());
        trips.emplace_back(Eigen::Index(basis.index_of(t)), Eigen::Index(si), 1.0);
    }
    return from_triplets(basis.dim(), trips, false);
}

namespace {

SparseOperator diagonal_op(const ConstrainedBasis& basis,
                           const std::function<double(FockState)>& f) {
    std::vector<Triplet> trips;
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        double v = f(basis.state(si));
        if (v != 0) trips.emplace_back(si, si, v);
    }
    return from_triplets(basis.dim(), trips, true);
}

}  // namespace

SparseOperator observable_mz(const ConstrainedBasis& basis) {
    const int N = basis.lattice().n_sites();
    return diagonal_op(basis, [N](FockState s) { return (2.0 * popcount64(s) - N) / N; });
}

SparseOperator observable_zpi(const ConstrainedBasis& basis) {
    const Lattice& lat = basis.lattice();
    return diagonal_op(basis, [&lat](FockState s) {
        double v = 0;
        for (int i = 0; i < lat.n_sites(); ++i)
            v += lat.stagger(i) * (((s >> i) & 1) ? +1 : -1);
        return v;
    });
}

SparseOperator observable_q(const ConstrainedBasis& basis, int j) {
    const Lattice& lat = basis.lattice();
    if (lat.n_legs < 2) throw std::invalid_argument("observable_q: needs >= 2 legs");
    if (j < 1 || j > lat.n_cols) throw std::invalid_argument("observable_q: bad rung index");
    int i1 = lat.site(j, 1), i2 = lat.site(j, 2);
    return diagonal_op(basis, [i1, i2](FockState s) {
        return double((((s >> i1) & 1) ? 1 : -1) * (((s >> i2) & 1) ? 1 : -1));
    });
}

SparseOperator observable(const ConstrainedBasis& basis, ObservableKind kind, int j, int a) {
    const Lattice& lat = basis.lattice();
    switch (kind) {
        case ObservableKind::Mz: return observable_mz(basis);
        case ObservableKind::Zpi: return observable_zpi(basis);
        case ObservableKind::Q: return observable_q(basis, j);
        case ObservableKind::Q3: {
            if (lat.n_legs != 3) throw std::invalid_argument("observable: Q3 needs 3 legs");
            int i1 = lat.site(j, 1), i2 = lat.site(j, 2), i3 = lat.site(j, 3);
            return diagonal_op(basis, [i1, i2, i3](FockState s) {
                return double((((s >> i1) & 1) ? 1 : -1) * (((s >> i2) & 1) ? 1 : -1) *
                              (((s >> i3) & 1) ? 1 : -1));
            });
        }
        case ObservableKind::H1body: return observable_h(basis, j, a);
        case ObservableKind::Nexc: return observable_n(basis);
        case ObservableKind::DDelta: return observable_ddelta(basis);
        case ObservableKind::Sz: {
            int i = lat.site(j, a);
            return diagonal_op(basis, [i](FockState s) { return ((s >> i) & 1) ? 1.0 : -1.0; });
        }
    }
    throw std::invalid_argument("observable: unknown kind");
}

SparseOperator observable_h(const ConstrainedBasis& basis, int j, int a) {
    const Lattice& lat = basis.lattice();
    int i = lat.site(j, a);
    std::vector<Triplet> trips;
    for (std::size_t si = 0; si < basis.dim(); ++si) {
        FockState s = basis.state(si);
        trips.emplace_back(si, si, ((s >> i) & 1) ? 1.0 : -1.0);
        if (!(s & lat.neighbor_mask[i])) {
            FockState t = s ^ (FockState(1) << i);
            trips.emplace_back(Eigen::Index(basis.index_of(t)), Eigen::Index(si), -1.0);
        }
    }
    return from_triplets(basis.dim(), trips, true);
}

SparseOperator observable_n(const ConstrainedBasis& basis) {
    return diagonal_op(basis, [](FockState s) { return double(popcount64(s)); });
}

SparseOperator observable_ddelta(const ConstrainedBasis& basis) {
    const Lattice& lat = basis.lattice();
    return diagonal_op(basis, [&lat](FockState s) {
        double v = 0;
        for (int i = 0; i < lat.n_sites(); ++i)
            v -= lat.stagger(i) * (((s >> i) & 1) ? +1 : -1);
        return v;
    });
}

}  // namespace rydl
