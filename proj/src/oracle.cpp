#include "recur/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace recur {

Stepper make_riccati_stepper(const RiccatiParams& p) {
    return [p](std::span<const Cx> window, const Tolerances& tol) {
        return riccati_step(p, window.back(), tol);
    };
}

Stepper make_so_stepper(const SecondOrderInstance& inst) {
    return [inst](std::span<const Cx> window, const Tolerances& tol) {
        return so_step(inst, window[1], window[0], tol);
    };
}

Stepper make_lyness_stepper(long k, Cx alpha) {
    if (k < 1) throw std::invalid_argument("make_lyness_stepper: k must be >= 1");
    return [alpha](std::span<const Cx> window, const Tolerances& tol) -> std::optional<Cx> {
        Cx num = alpha;
        for (size_t i = 1; i < window.size(); ++i) num += window[i];
        Cx den = window.front();
        if (std::abs(den) <= tol.singular * std::max(1.0, std::abs(num))) return std::nullopt;
        Cx out = num / den;
        if (!is_finite(out)) return std::nullopt;
        return out;
    };
}

Trajectory iterate_orbit(const Stepper& stepper, std::span<const Cx> init, long n_max,
                         const Tolerances& tol) {
    if (init.empty()) throw std::invalid_argument("iterate_orbit: init must be nonempty");
    if (n_max < 1) throw std::invalid_argument("iterate_orbit: n_max must be >= 1");
    Trajectory t;
    t.values.reserve(init.size() + size_t(n_max));
    t.values.assign(init.begin(), init.end());
    const size_t w = init.size();
    for (long n = 1; n <= n_max; ++n) {
        std::span<const Cx> window{t.values.data() + (t.values.size() - w), w};
        auto next = stepper(window, tol);
        if (!next) {
            t.singular_at = n;
            return t;
        }
        t.values.push_back(*next);
    }
    return t;
}

namespace {

// Shared comparison core: closed_at(n) evaluates the closed form at index n.
VerificationReport verify_impl(const Stepper& stepper, std::span<const Cx> init,
                               long n_max, const Tolerances& tol,
                               const std::function<ClosedForm(long)>& closed_at) {
    VerificationReport r;
    Trajectory orbit = iterate_orbit(stepper, init, n_max, tol);
    r.oracle_singular_at = orbit.singular_at;
    const size_t w = init.size();
    const long oracle_last = orbit.singular_at ? *orbit.singular_at - 1 : n_max;
    for (long n = 1; n <= n_max; ++n) {
        ClosedForm cf = closed_at(n);
        if (std::holds_alternative<UndefinedAt>(cf)) {
            r.closed_form_singular_at = std::get<UndefinedAt>(cf).step;
            break;
        }
        if (n > oracle_last) continue; // nothing to compare against
        Cx ref = orbit.values[w - 1 + size_t(n)];
        double err = std::abs(std::get<Cx>(cf) - ref) / std::max(1.0, std::abs(ref));
        if (err > r.max_rel_error) r.max_rel_error = err;
        if (err > tol.rel && !r.first_disagreement) r.first_disagreement = n;
    }
    return r;
}

} // namespace

VerificationReport verify_closed_form(const RiccatiClassification& c, Cx x0, long n_max,
                                      const Tolerances& tol) {
    std::array<Cx, 1> init{x0};
    return verify_impl(make_riccati_stepper(c.params), init, n_max, tol,
                       [&](long n) { return riccati_closed_form(c, x0, n); });
}

VerificationReport verify_closed_form(const SecondOrderClassification& c, long n_max,
                                      const Tolerances& tol) {
    std::array<Cx, 2> init{c.init.zm1, c.init.z0};
    return verify_impl(make_so_stepper(c.instance), init, n_max, tol,
                       [&](long n) { return so_closed_form(c, n); });
}

std::optional<double> invariant_drift(const SecondOrderInstance& inst,
                                      const InitialPair& init, long n_max,
                                      const Tolerances& tol) {
    auto I0 = so_invariant(inst, init.z0, init.zm1);
    if (!I0) return std::nullopt;
    std::array<Cx, 2> window{init.zm1, init.z0};
    Trajectory orbit = iterate_orbit(make_so_stepper(inst), window, n_max, tol);
    double drift = 0.0;
    for (size_t i = 2; i < orbit.values.size(); ++i) {
        auto In = so_invariant(inst, orbit.values[i], orbit.values[i - 1]);
        if (!In) continue; // invariant undefined at this pair, nothing to measure
        drift = std::max(drift, std::abs(*In - *I0));
    }
    return drift;
}

Cx lyness_invariant(long k, Cx alpha, std::span<const Cx> window) {
    if (k < 1) throw std::invalid_argument("lyness_invariant: k must be >= 1");
    if (long(window.size()) != k + 1)
        throw std::invalid_argument("lyness_invariant: window must hold k+1 values");
    Cx prod{1.0, 0.0};
    Cx sum = alpha;
    for (Cx x : window) {
        if (x == Cx{}) throw std::domain_error("lyness_invariant: zero window entry");
        prod *= 1.0 / x + 1.0;
        sum += x;
    }
    return prod * sum;
}

} // namespace recur
