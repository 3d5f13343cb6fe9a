#pragma once

#include "nccc/fan.hpp"
#include "nccc/linalg.hpp"

#include <stdexcept>

namespace nccc {

/// Torus-invariant divisor sum a_rho D_rho, one coefficient per ray.
using ToricDivisor = std::vector<long>;

struct WindowOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lattice window [lo, hi] (inclusive per coordinate) containing every vertex of the arrangement
/// {<m, v_rho> = -a_rho}, padded by one.
std::pair<IntVec, IntVec> cohomology_window(const Fan& f, const ToricDivisor& d);

/// Graded dims of H^i(X, O(D)) for a smooth complete fan, i = 0 .. n.
GradedDims line_bundle_cohomology(const Fan& f, const ToricDivisor& d);
GradedDims line_bundle_cohomology_serial(const Fan& f, const ToricDivisor& d);

/// Contribution of one character m: reduced cohomology of the full subcomplex on the rays with
/// <m, v_rho> < -a_rho, shifted up by one.
GradedDims character_contribution(const Fan& f, const ToricDivisor& d, const IntVec& m);

/// h^i(P^{n-1}, O(d)).
GradedDims projective_space_cohomology(std::size_t n_minus_1, long d);

/// Ext^i(O_E(kE), O_E(lE)) on the blow-up of an n-dimensional smooth variety at a fixed point.
GradedDims ext_orlov(std::size_t n, int k, int l);

/// chi(O(D2 - D1)).
long euler_pairing(const Fan& f, const ToricDivisor& d1, const ToricDivisor& d2);

/// Canonical divisor -sum D_rho.
ToricDivisor canonical_divisor(const Fan& f);

}  // namespace nccc
