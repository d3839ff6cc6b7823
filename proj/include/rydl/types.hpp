#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace rydl {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

// Bitmask over N sites; bit i set = site i in the Rydberg excited state.
using FockState = std::uint64_t;

// Thrown when a numerical guard trips (norm/trace drift, non-convergence).
struct numeric_abort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a requested problem exceeds a configured resource cap.
struct resource_cap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rydl
