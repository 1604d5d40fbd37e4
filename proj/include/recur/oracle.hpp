#pragma once

#include "recur/complex.hpp"
#include "recur/riccati.hpp"
#include "recur/second_order.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace recur {

// Produces the next orbit element from the chronological window of the most
// recent `order` elements (oldest first); nullopt signals a singular step.
using Stepper = std::function<std::optional<Cx>(std::span<const Cx>, const Tolerances&)>;

Stepper make_riccati_stepper(const RiccatiParams& p);
Stepper make_so_stepper(const SecondOrderInstance& inst);
// x_{n+1} = (alpha + x_n + ... + x_{n-k+1}) / x_{n-k}; window length k+1.
Stepper make_lyness_stepper(long k, Cx alpha);

// Brute-force orbit: the initial window (oldest first) followed by every
// computed element. singular_at = n means applying the stepper the n-th time
// was singular, so the last stored element has index n-1.
struct Trajectory {
    std::vector<Cx> values;
    std::optional<long> singular_at;
    bool completed() const { return !singular_at.has_value(); }
};

// Applies stepper up to n_max (>= 1) times starting from init (length = the
// recurrence's order), stopping at the first singular step.
Trajectory iterate_orbit(const Stepper& stepper, std::span<const Cx> init, long n_max,
                         const Tolerances& tol);

// Closed form versus brute-force orbit over n <= n_max. Relative error is
// |closed - orbit| / max(1, |orbit|), compared per index where both sides
// produced a value; first_disagreement is the smallest index whose error
// exceeds tol.rel (empty iff max_rel_error <= tol.rel). A singular_at field
// that is empty means that side completed all n_max steps.
struct VerificationReport {
    double max_rel_error = 0.0;
    std::optional<long> first_disagreement;
    std::optional<long> oracle_singular_at;
    std::optional<long> closed_form_singular_at;
};

VerificationReport verify_closed_form(const RiccatiClassification& c, Cx x0, long n_max,
                                      const Tolerances& tol);
VerificationReport verify_closed_form(const SecondOrderClassification& c, long n_max,
                                      const Tolerances& tol);

// Max over computed steps of |I(z_{n+1}, z_n) - I(z_0, z_{-1})|, stopping at
// the first singular step; nullopt when the invariant is undefined at init.
// The caller chooses the acceptable scale (typically max(1, |I_0|)).
std::optional<double> invariant_drift(const SecondOrderInstance& inst,
                                      const InitialPair& init, long n_max,
                                      const Tolerances& tol);

// (prod_{i=0}^{k} (1/x_{n-i} + 1)) * (alpha + sum_{i=0}^{k} x_{n-i}) over a
// window of k+1 values. Throws std::domain_error on a zero entry,
// std::invalid_argument on a size mismatch or k < 1.
Cx lyness_invariant(long k, Cx alpha, std::span<const Cx> window);

} // namespace recur
