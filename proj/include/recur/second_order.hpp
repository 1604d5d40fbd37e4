#pragma once

#include "recur/complex.hpp"
#include "recur/riccati.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace recur {

// The six rational second-order recurrences. All take one parameter B;
// every equation except eq6 requires B != 0.
enum class EquationId { eq4, eq5, eq6, eq7, eq8, eq9 };

const char* equation_name(EquationId eq); // "eq4".."eq9"
std::optional<EquationId> parse_equation(std::string_view name);

struct SecondOrderInstance {
    EquationId eq;
    Cx B;
};

// Initial conditions as a point in C^2 with coordinates (z0, zm1) = (z_0, z_{-1}).
struct InitialPair {
    Cx z0;
    Cx zm1;
};

// Subcase labels across all six equations. eq4/eq5 use i..iv_c, eq6 uses
// linear, eq7 uses i/ii, eq8/eq9 use a..d.
enum class SoCase { i, ii, iii, iv_a, iv_b, iv_c, linear, a, b, c, d };

const char* so_case_name(SoCase c); // "i", "ii", "iii", "iv-a", ..., "d"
std::vector<SoCase> so_subcases(EquationId eq);

// Flat classification record. Payload validity by subcase:
//   C        invariant value at (z0, zm1) whenever that expression is finite
//   lambda1, lambda2   hyperbolic subcases (eq4/eq5 iv_a, eq8/eq9 b);
//                      lambda1 + lambda2 = 1, lambda1*lambda2 = q where
//                      q = B/C for eq4 and -C/B^2 for eq5/eq8/eq9
//   M1, M2   eq4 iv_a numerator/denominator coefficients
//   w0       eq4 iv_c
//   D        eq5 iv_c, eq8/eq9 d
//   rho      trig subcases (eq4/eq5 iv_c, eq8/eq9 d), real in (0, pi/2)
//   reduced  classification of the first-order map the orbit follows, for the
//            subcases evaluated through it (eq4/eq5 iv_*, eq8/eq9 b/c/d)
struct SecondOrderClassification {
    SecondOrderInstance instance;
    InitialPair init;
    Tolerances tol;
    SoCase subcase;
    Cx C{};
    Cx lambda1{}, lambda2{};
    Cx M1{}, M2{};
    Cx w0{};
    Cx D{};
    double rho = 0.0;
    RiccatiClassification reduced{};
};

// One application of the recurrence to the window (zn, znm1); nullopt when
// the denominator magnitude is <= tol.singular * max(1, numerator magnitude).
std::optional<Cx> so_step(const SecondOrderInstance& inst, Cx zn, Cx znm1,
                          const Tolerances& tol);

// The equation's conserved quantity at the ordered pair (zn, znm1); nullopt
// when its own denominator is exactly zero (zn for eq4/eq5/eq7, znm1 for
// eq5/eq6) or the value is not finite. eq8/eq9 invariants are polynomial.
std::optional<Cx> so_invariant(const SecondOrderInstance& inst, Cx zn, Cx znm1);

// Decides the subcase whose hypotheses hold at (z0, zm1), testing degenerate
// conditions with approx_eq. Dispatch order for overlapping hypotheses:
// eq4 tests i, iii, ii, then iv; eq5 tests iii, i, ii, then iv.
// Throws std::invalid_argument when B = 0 for eq != eq6 or inputs are not
// finite, std::domain_error when (z0, zm1) makes the very first step 0/0
// (the seed pairs (0,-1/B), (-1/B,0), (-B,-B), (0,0), and the zm1 = 0 /
// zm1 = -B lines of eq6/eq7).
SecondOrderClassification so_classify(const SecondOrderInstance& inst,
                                      const InitialPair& init, const Tolerances& tol);

// Closed-form element at index n >= -1 (n = -1 and 0 return the initial pair
// verbatim). UndefinedAt{k} reports the smallest k <= n at which the orbit
// from (z0, zm1) is singular.
ClosedForm so_closed_form(const SecondOrderClassification& c, long n);

// First-order map the z-sequence itself satisfies once the invariant value C
// is fixed: eq4 z' = (1+Bz)/(C-B-B^2 z), eq5 z' = 1/(Cz-B), eq6 z' = Cz-B,
// eq7 z' = (z+B)/C, eq8 z' = C/(z+B), eq9 z' = (C-Bz)/z.
RiccatiParams so_reduced_params(EquationId eq, Cx B, Cx C);

// Membership result: which branch of the forbidden set the pair lies on and
// the step index at which its orbit dies.
struct SoMembership {
    const char* branch;
    long n;
};

// Decides membership of (z0, zm1) in the equation's forbidden set with
// horizon max_n >= 1: degenerate branches (seed pairs, pole/zero lines) are
// matched directly, every other pair is tested against the forbidden points
// of the reduced map selected by its own invariant constant.
std::optional<SoMembership> so_forbidden_contains(const SecondOrderInstance& inst,
                                                  const InitialPair& init, long max_n,
                                                  const Tolerances& tol);

// A concrete forbidden pair: iterating from (z0, zm1) is singular at exactly
// step n.
struct ForbiddenPoint2D {
    Cx z0;
    Cx zm1;
    const char* branch;
    long n;
};

// A full line {pairs with one coordinate pinned} contained in the forbidden
// set; `value` is the pinned coordinate's value and n the generic death step.
struct ForbiddenLine {
    enum class Coord { z0, zm1 };
    Coord fixed;
    Cx value;
    const char* branch;
    long n;
};

// Finite parameter samples for the continuum-indexed branches: invariant
// constants for the per-C families, free-coordinate values along full lines.
struct SamplingPlan {
    std::vector<Cx> c_grid;
    std::vector<Cx> line_grid;
};

struct ForbiddenSample {
    std::vector<ForbiddenPoint2D> points;
    std::vector<ForbiddenLine> lines;
};

struct EmptyGridError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Emits forbidden-set members with death step <= n_max: countable branches
// exactly, per-C families at the plan's c_grid values, full lines as
// ForbiddenLine descriptors plus concrete samples at the plan's line_grid
// values. Degenerate parameter values that would collapse a family point
// onto an earlier branch are skipped. Throws EmptyGridError when the plan
// carries no values at all, std::invalid_argument when n_max < 1.
ForbiddenSample so_forbidden_sample(const SecondOrderInstance& inst, long n_max,
                                    const SamplingPlan& plan);

} // namespace recur
