#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "rydl/basis.hpp"
#include "rydl/symmetry.hpp"

using namespace rydl;

namespace {

// independent oracle: filter all 2^N bitmasks by the adjacency predicate
std::vector<FockState> brute_force_basis(const Lattice& lat) {
    std::vector<FockState> out;
    const int N = lat.n_sites();
    for (FockState s = 0; s < (FockState(1) << N); ++s)
        if (blockade_legal(lat, s)) out.push_back(s);
    return out;
}

}  // namespace

TEST_CASE("build_lattice geometries") {
    auto l22 = build_lattice(2, 2, true, true);
    CHECK(l22.n_sites() == 4);
    std::set<std::pair<int, int>> b(l22.bonds.begin(), l22.bonds.end());
    CHECK(b == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});

    // 18 horizontal + 18 vertical bonds by direct enumeration
    auto l63 = build_lattice(6, 3, true, true);
    CHECK(l63.n_sites() == 18);
    CHECK(l63.bonds.size() == 36);

    auto ring = build_lattice(4, 1, true, false);
    CHECK(ring.n_sites() == 4);
    CHECK(ring.bonds.size() == 4);

    CHECK_THROWS_AS(build_lattice(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_lattice(40, 2), std::invalid_argument);
}

TEST_CASE("basis dimensions match the published table") {
    // (N, D) rows for the 2-leg ladder
    const std::vector<std::pair<int, std::size_t>> rows = {
        {4, 7}, {8, 35}, {12, 199}, {16, 1155}, {20, 6727}, {24, 39203}};
    for (auto [N, D] : rows) {
        auto basis = enumerate_basis(build_lattice(N / 2, 2));
        CHECK(basis.dim() == D);
    }
}

TEST_CASE("enumerate_basis equals the brute-force filter up to N=20") {
    for (auto [L, legs] : std::vector<std::pair<int, int>>{{5, 2}, {8, 2}, {10, 2}, {4, 3}, {6, 3}, {9, 1}, {4, 4}}) {
        auto lat = build_lattice(L, legs);
        auto basis = enumerate_basis(lat);
        auto oracle = brute_force_basis(lat);
        REQUIRE(basis.dim() == oracle.size());
        CHECK(std::equal(oracle.begin(), oracle.end(), basis.states().begin()));
    }
}

TEST_CASE("index_of is the exact inverse") {
    auto basis = enumerate_basis(build_lattice(6, 2));
    for (std::size_t i = 0; i < basis.dim(); ++i) CHECK(basis.index_of(basis.state(i)) == i);
    CHECK_THROWS_AS(basis.index_of(FockState(3)), std::invalid_argument);  // rung pair
}

TEST_CASE("translations") {
    auto lat = build_lattice(4, 2);
    auto basis = enumerate_basis(lat);
    FockState vac = 0;
    CHECK(translate(basis, Axis::X, vac) == vac);

    FockState z2 = parse_state("oxox/xoxo", lat);
    FockState z2b = parse_state("xoxo/oxox", lat);
    CHECK(translate(basis, Axis::X, z2) == z2b);
    CHECK(translate(basis, Axis::Y, z2) == z2b);

    // bijection and order: T_x^L = T_y^legs = identity
    for (auto [L, legs] : std::vector<std::pair<int, int>>{{4, 2}, {3, 3}}) {
        auto lt = build_lattice(L, legs);
        auto bs = enumerate_basis(lt);
        std::set<FockState> image;
        for (std::size_t i = 0; i < bs.dim(); ++i) {
            FockState t = bs.state(i);
            for (int m = 0; m < L; ++m) t = translate(bs, Axis::X, t);
            CHECK(t == bs.state(i));
            image.insert(translate(bs, Axis::X, bs.state(i)));
            FockState u = bs.state(i);
            for (int m = 0; m < legs; ++m) u = translate(bs, Axis::Y, u);
            CHECK(u == bs.state(i));
        }
        CHECK(image.size() == bs.dim());
    }
}

TEST_CASE("state text format") {
    auto lat = build_lattice(4, 2);
    CHECK(format_state(0, lat) == "oooo/oooo");
    FockState z2 = parse_state("oxox/xoxo", lat);
    CHECK(format_state(z2, lat) == "oxox/xoxo");
    CHECK_THROWS(parse_state("xx/oo", build_lattice(2, 2)));
    CHECK_THROWS(parse_state("ooo/ooo", lat));
    CHECK_THROWS(parse_state("oqoo/oooo", lat));

    auto lat8 = build_lattice(8, 2);
    FockState ar = parse_state("xooxoxoo/ooooxooo", lat8);
    CHECK(format_state(ar, lat8) == "xooxoxoo/ooooxooo");

    // round trip over the whole N=16 basis
    auto basis = enumerate_basis(lat8);
    for (std::size_t i = 0; i < basis.dim(); i += 17)
        CHECK(parse_state(format_state(basis.state(i), lat8), lat8) == basis.state(i));
}

TEST_CASE("sector dimensions match the published table") {
    struct Row {
        int N;
        std::size_t kx0, k00, k0pi, kpipi;
    };
    // the printed pi column corresponds to momentum index 1
    const std::vector<Row> rows = {{8, 21, 12, 9, 8},
                                   {12, 71, 36, 35, 32},
                                   {16, 301, 156, 145, 144},
                                   {20, 1351, 676, 675, 672},
                                   {24, 6581, 3308, 3273, 3264}};
    for (const auto& row : rows) {
        auto basis = enumerate_basis(build_lattice(row.N / 2, 2));
        SymmetrySector k00(basis, SectorSpec{0, 0, false});
        SymmetrySector k0pi(basis, SectorSpec{0, 1, false});
        SymmetrySector kpipi(basis, SectorSpec{1, 1, false});
        std::size_t kx0_total = 0;
        for (int ky = 0; ky < 2; ++ky)
            kx0_total += SymmetrySector(basis, SectorSpec{0, ky, false}).dim();
        CHECK(kx0_total == row.kx0);
        CHECK(k00.dim() == row.k00);
        CHECK(k0pi.dim() == row.k0pi);
        CHECK(kpipi.dim() == row.kpipi);
    }
    // N=16 headline entry
    auto basis16 = enumerate_basis(build_lattice(8, 2));
    CHECK(SymmetrySector(basis16, SectorSpec{0, 0, false}).dim() == 156);
}

TEST_CASE("sector completeness for L<=10, legs<=3") {
    for (auto [L, legs] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {8, 2}, {10, 2}, {4, 3}, {6, 3}, {6, 1}, {10, 1}}) {
        auto basis = enumerate_basis(build_lattice(L, legs));
        int ox = L / std::gcd(L, 2);
        int oy = legs >= 2 ? legs : 1;
        std::size_t total = 0;
        for (int kx = 0; kx < ox; ++kx) {
            if (legs >= 2)
                for (int ky = 0; ky < oy; ++ky)
                    total += SymmetrySector(basis, SectorSpec{kx, ky, false}).dim();
            else
                total += SymmetrySector(basis, SectorSpec{kx, std::nullopt, false}).dim();
        }
        CHECK(total == basis.dim());
    }
}

TEST_CASE("sector isometry is orthonormal") {
    auto basis = enumerate_basis(build_lattice(6, 2));
    SymmetrySector sec(basis, SectorSpec{1, 1, false});
    Eigen::MatrixXcd B = sec.isometry();
    CHECK((B.adjoint() * B - Eigen::MatrixXcd::Identity(sec.dim(), sec.dim())).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("invalid momentum index") {
    auto basis = enumerate_basis(build_lattice(4, 2));
    CHECK_THROWS_AS(SymmetrySector(basis, SectorSpec{5, 0, false}), std::invalid_argument);
    CHECK_THROWS_AS(SymmetrySector(basis, SectorSpec{0, 2, false}), std::invalid_argument);
}
