#pragma once

#include "recur/complex.hpp"
#include "recur/riccati.hpp"
#include "recur/second_order.hpp"

#include <cstdint>
#include <vector>

namespace recur {

// Deterministic parameter draws for property suites and `verify`: the same
// (seed, index) yields the same draw on every platform. Components are
// uniform in [-2, 2] with rejection of draws too close to case boundaries,
// to forbidden points (1e-6 margin over a 30-step horizon), or to a
// denominator collapse along the probed orbit; each draw is re-classified
// and redrawn on mismatch, so the returned instance provably lies in the
// requested case.

struct RiccatiDraw {
    RiccatiParams params;
    Cx x0;
};

RiccatiDraw sample_riccati(RiccatiCase kind, std::uint64_t seed, long index);

struct SoDraw {
    SecondOrderInstance instance;
    InitialPair init;
};

// Admissible draw inside the requested subcase (degenerate coordinates are
// set exactly, quadratic-constant subcases are constructed by inverting the
// invariant).
SoDraw sample_so(EquationId eq, SoCase subcase, std::uint64_t seed, long index);

// Unconstrained-subcase draw for conservation sweeps: rejects only pairs
// whose invariant is undefined or whose first 40 denominators come within
// 1e-6 (absolute) of zero.
SoDraw sample_so_generic(EquationId eq, std::uint64_t seed, long index);

// k+1 positive real entries, uniform in [0.5, 2.5].
std::vector<Cx> sample_lyness_window(long k, std::uint64_t seed, long index);

} // namespace recur
