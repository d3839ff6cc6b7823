#pragma once

#include <string>
#include <vector>

#include "rydl/lattice.hpp"
#include "rydl/types.hpp"

namespace rydl {

// All blockade-legal Fock states of a lattice, sorted ascending by bit value.
class ConstrainedBasis {
  public:
    ConstrainedBasis() = default;
    ConstrainedBasis(Lattice lat, std::vector<FockState> states)
        : lattice_(std::move(lat)), states_(std::move(states)) {}

    const Lattice& lattice() const { return lattice_; }
    const std::vector<FockState>& states() const { return states_; }
    std::size_t dim() const { return states_.size(); }
    FockState state(std::size_t i) const { return states_[i]; }

    // exact inverse lookup; throws if the state is not blockade-legal
    std::size_t index_of(FockState s) const;
    bool contains(FockState s) const;

  private:
    Lattice lattice_;
    std::vector<FockState> states_;
};

ConstrainedBasis enumerate_basis(const Lattice& lat);

bool blockade_legal(const Lattice& lat, FockState s);

enum class Axis { X, Y };

// one-unit lattice translation of a basis state; the image is again legal
FockState translate(const ConstrainedBasis& basis, Axis axis, FockState s);

// canonical text: legs as rows top-to-bottom joined by '/', 'x' excited, 'o' ground
std::string format_state(FockState s, const Lattice& lat);
FockState parse_state(const std::string& text, const Lattice& lat);

}  // namespace rydl
