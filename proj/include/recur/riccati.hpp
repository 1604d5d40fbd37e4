#pragma once

#include "recur/complex.hpp"

#include <optional>
#include <variant>

namespace recur {

// Parameters of x_{n+1} = (alpha + beta*x_n)/(A + B*x_n).
struct RiccatiParams {
    Cx alpha, beta, A, B;
};

enum class RiccatiCase {
    case1, // A = B = 0: the map is undefined everywhere
    case2, // B = 0, A != 0: affine recurrence, no poles
    case3, // B != 0, alpha*B = beta*A: constant beta/B after one step
    case4, // beta + A = 0 (and alpha*B != beta*A): period-two orbit
    case5, // R in C \ [1/4, inf): two distinct roots w-, w+
    case6, // R = 1/4: double root 1/2
    case7, // R real > 1/4: conjugate roots, rotation angle phi
};

const char* riccati_case_name(RiccatiCase c); // "case1".."case7"

// Classification result. Payload validity depends on `kind`:
//   case5: R, w_minus, w_plus   (w_plus + w_minus = 1, w_plus*w_minus = R)
//   case6: R_real (= 1/4 up to roundoff)
//   case7: R_real > 1/4 and phi = arccos(sqrt(1/R)/2) in (0, pi/2)
struct RiccatiClassification {
    RiccatiCase kind;
    RiccatiParams params;
    Tolerances tol; // tolerances the classification was made with
    Cx R{};
    Cx w_minus{}, w_plus{};
    double R_real = 0.0;
    double phi = 0.0;
};

// Decides the unique case whose hypotheses hold, testing zero conditions with
// approx_eq at `tol`. Realness of R is decided by |Im R| <= tol.abs + tol.rel*|R|.
RiccatiClassification classify_riccati(const RiccatiParams& p, const Tolerances& tol);

// One application of the map; nullopt when |A + B*x| <= tol.singular * max(1, |alpha + beta*x|).
std::optional<Cx> riccati_step(const RiccatiParams& p, Cx x, const Tolerances& tol);

// A closed-form evaluation that hit the pole: the orbit is undefined from
// this step on (x_{step-1} = -A/B, so x_step does not exist).
struct UndefinedAt {
    long step;
};

using ClosedForm = std::variant<Cx, UndefinedAt>;

// Evaluates the classified case's closed form at index n >= 0 (n = 0 returns
// x0 itself). Returns UndefinedAt{k} with the smallest k <= n at which the
// orbit from x0 is singular.
ClosedForm riccati_closed_form(const RiccatiClassification& c, Cx x0, long n);

// n-th element of the forbidden set, indices starting at 1; the n = 1 element
// is the pole -A/B itself in cases 3..7.
struct ForbiddenPoint {
    enum class Kind {
        point,       // value holds the n-th forbidden point
        whole_plane, // case 1: every initial condition is forbidden
        empty_set,   // case 2: no forbidden points
        no_point,    // index n has no element: cases 3/4 for n >= 2, case 7
                     // when sin(n*phi) = 0
    };
    Kind kind;
    Cx value{};
};

ForbiddenPoint riccati_forbidden_point(const RiccatiClassification& c, long n);

// Smallest n <= max_n with approx_eq(x0, forbidden point n); nullopt if none.
// Case 1 always returns 1, case 2 always nullopt.
std::optional<long> riccati_forbidden_contains(const RiccatiClassification& c, Cx x0,
                                               long max_n, const Tolerances& tol);

} // namespace recur
