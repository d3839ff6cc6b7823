#include "rydl/basis.hpp"

#include <algorithm>

namespace rydl {

bool blockade_legal(const Lattice& lat, FockState s) {
    const int N = lat.n_sites();
    for (int i = 0; i < N; ++i)
        if ((s >> i) & 1 && (s & lat.neighbor_mask[i])) return false;
    return true;
}

std::size_t ConstrainedBasis::index_of(FockState s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || *it != s)
        throw std::invalid_argument("ConstrainedBasis: state not in basis");
    return std::size_t(it - states_.begin());
}

bool ConstrainedBasis::contains(FockState s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s);
    return it != states_.end() && *it == s;
}

namespace {

// Column patterns legal within one column (vertical bonds only).
std::vector<std::uint32_t> column_patterns(const Lattice& lat) {
    const int legs = lat.n_legs;
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << legs); ++m) {
        bool ok = true;
        for (int a = 1; a <= legs && ok; ++a) {
            if (!((m >> (a - 1)) & 1)) continue;
            int anext = (a < legs) ? a + 1 : (lat.pbc_y && legs > 2 ? 1 : 0);
            if (anext && ((m >> (anext - 1)) & 1)) ok = false;
        }
        if (ok) out.push_back(m);
    }
    return out;
}

}  // namespace

ConstrainedBasis enumerate_basis(const Lattice& lat) {
    const int L = lat.n_cols;
    const int legs = lat.n_legs;
    auto pats = column_patterns(lat);

    // extend column by column; horizontal bonds forbid same-leg overlap
    std::vector<FockState> states;
    struct Frame {
        FockState bits;
        std::uint32_t first;
        int col;
    };
    std::vector<Frame> dfs;
    for (auto p : pats) dfs.push_back({FockState(p), p, 1});
    while (!dfs.empty()) {
        Frame f = dfs.back();
        dfs.pop_back();
        if (f.col == L) {
            std::uint32_t last = std::uint32_t(f.bits >> ((L - 1) * legs));
            if (lat.pbc_x && L > 2 && (last & f.first)) continue;
            // L == 2: the wrap bond duplicates the interior one, already checked
            states.push_back(f.bits);
            continue;
        }
        std::uint32_t prev = std::uint32_t((f.bits >> ((f.col - 1) * legs)) & ((1u << legs) - 1));
        for (auto p : pats) {
            if (p & prev) continue;
            dfs.push_back({f.bits | (FockState(p) << (f.col * legs)), f.first, f.col + 1});
        }
    }
    std::sort(states.begin(), states.end());
    return ConstrainedBasis(lat, std::move(states));
}

FockState translate(const ConstrainedBasis& basis, Axis axis, FockState s) {
    const Lattice& lat = basis.lattice();
    if (!basis.contains(s)) throw std::invalid_argument("translate: state not in basis");
    auto perm = (axis == Axis::X) ? lat.perm_x() : lat.perm_y();
    return apply_perm(s, perm, lat.n_sites());
}

std::string format_state(FockState s, const Lattice& lat) {
    std::string out;
    for (int a = 1; a <= lat.n_legs; ++a) {
        if (a > 1) out += '/';
        for (int j = 1; j <= lat.n_cols; ++j)
            out += ((s >> lat.site(j, a)) & 1) ? 'x' : 'o';
    }
    return out;
}

FockState parse_state(const std::string& text, const Lattice& lat) {
    std::vector<std::string> rows;
    std::string cur;
    for (char c : text) {
        if (c == '/') {
            rows.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    rows.push_back(cur);
    if (int(rows.size()) != lat.n_legs)
        throw std::invalid_argument("parse_state: expected " + std::to_string(lat.n_legs) + " rows");
    FockState s = 0;
    for (int a = 1; a <= lat.n_legs; ++a) {
        const std::string& row = rows[a - 1];
        if (int(row.size()) != lat.n_cols)
            throw std::invalid_argument("parse_state: row length != n_cols");
        for (int j = 1; j <= lat.n_cols; ++j) {
            char c = row[j - 1];
            if (c == 'x' || c == 'X' || c == '1')
                s |= FockState(1) << lat.site(j, a);
            else if (c != 'o' && c != 'O' && c != '0' && c != '.')
                throw std::invalid_argument("parse_state: bad character");
        }
    }
    if (!blockade_legal(lat, s))
        throw std::invalid_argument("parse_state: pattern violates the blockade");
    return s;
}

}  // namespace rydl
