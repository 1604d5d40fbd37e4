#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "recur/oracle.hpp"

using namespace recur;

namespace {

const Tolerances kTol{};

bool close(Cx a, Cx b, double rel = 1e-12) {
    return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

} // namespace

TEST_CASE("orbit iteration stores the window plus each computed element") {
    RiccatiParams p{{1, 0}, {2, 0}, {3, 0}, {0, 0}};
    std::array<Cx, 1> init{Cx{2, 0}};
    Trajectory t = iterate_orbit(make_riccati_stepper(p), init, 4, kTol);
    CHECK(t.completed());
    REQUIRE(t.values.size() == 5);
    CHECK(t.values[0] == Cx{2, 0});
    CHECK(close(t.values[1], {5.0 / 3.0, 0}));
    CHECK(close(t.values[4], {97.0 / 81.0, 0}));

    SecondOrderInstance inst{EquationId::eq4, {1, 0}};
    std::array<Cx, 2> pair{Cx{3, 0}, Cx{2, 0}}; // oldest first: z_{-1}, z_0
    Trajectory s = iterate_orbit(make_so_stepper(inst), pair, 5, kTol);
    CHECK(s.completed());
    REQUIRE(s.values.size() == 7);
    CHECK(close(s.values[2], {1, 0}));
    CHECK(close(s.values[6], {3.0 / 11.0, 0}));
}

TEST_CASE("orbit iteration stops at the first singular step") {
    RiccatiParams p{{1, 0}, {2, 0}, {0, 0}, {1, 0}};
    std::array<Cx, 1> init{Cx{-0.5, 0}};
    Trajectory t = iterate_orbit(make_riccati_stepper(p), init, 10, kTol);
    CHECK_FALSE(t.completed());
    CHECK(t.singular_at == 2);
    REQUIRE(t.values.size() == 2); // x_0 and x_1 survive
    CHECK(close(t.values[1], {0, 0}));

    CHECK_THROWS_AS((void)iterate_orbit(make_riccati_stepper(p), std::span<const Cx>{},
                                        5, kTol),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)iterate_orbit(make_riccati_stepper(p), init, 0, kTol),
                    std::invalid_argument);
}

TEST_CASE("closed forms agree with brute force on regular orbits") {
    RiccatiParams p{{1, 0}, {2, 0}, {0, 0}, {1, 0}};
    auto rc = classify_riccati(p, kTol);
    VerificationReport r = verify_closed_form(rc, {2, 0}, 25, kTol);
    CHECK(r.max_rel_error <= 1e-12);
    CHECK_FALSE(r.first_disagreement.has_value());
    CHECK_FALSE(r.oracle_singular_at.has_value());
    CHECK_FALSE(r.closed_form_singular_at.has_value());

    auto sc = so_classify({EquationId::eq4, {1, 0}}, {{2, 0}, {3, 0}}, kTol);
    VerificationReport s = verify_closed_form(sc, 30, kTol);
    CHECK(s.max_rel_error <= 1e-10);
    CHECK_FALSE(s.first_disagreement.has_value());
    CHECK_FALSE(s.oracle_singular_at.has_value());
    CHECK_FALSE(s.closed_form_singular_at.has_value());
}

TEST_CASE("both sides agree on where a forbidden start dies") {
    RiccatiParams p{{1, 0}, {2, 0}, {0, 0}, {1, 0}};
    auto rc = classify_riccati(p, kTol);
    VerificationReport r = verify_closed_form(rc, {-0.5, 0}, 25, kTol);
    CHECK(r.oracle_singular_at == 2);
    CHECK(r.closed_form_singular_at == 2);
    CHECK_FALSE(r.first_disagreement.has_value());

    auto sc = so_classify({EquationId::eq4, {1, 0}}, {{-1.5, 0}, {-1, 0}}, kTol);
    VerificationReport s = verify_closed_form(sc, 25, kTol);
    CHECK(s.oracle_singular_at == 4);
    CHECK(s.closed_form_singular_at == 4);
    CHECK(s.max_rel_error <= 1e-12);
}

TEST_CASE("invariant drift is flat along regular orbits, empty when undefined") {
    SecondOrderInstance inst{EquationId::eq4, {1, 0}};
    auto d = invariant_drift(inst, {{2, 0}, {3, 0}}, 30, kTol);
    REQUIRE(d.has_value());
    CHECK(*d <= 1e-11);
    CHECK_FALSE(invariant_drift(inst, {{0, 0}, {3, 0}}, 10, kTol).has_value());

    SecondOrderInstance e6{EquationId::eq6, {1, 0}};
    auto d6 = invariant_drift(e6, {{2, 0}, {1, 0}}, 12, kTol);
    REQUIRE(d6.has_value());
    // The orbit grows like 3^n; measure drift relative to the invariant scale.
    CHECK(*d6 <= 1e-9 * 3.0);
}

TEST_CASE("cyclic window recurrence: frozen invariants and the 5-cycle") {
    std::array<Cx, 2> w1{Cx{1, 0}, Cx{1, 0}};
    CHECK(close(lyness_invariant(1, {1, 0}, w1), {12, 0}));
    std::array<Cx, 3> w2{Cx{1, 0}, Cx{1, 0}, Cx{1, 0}};
    CHECK(close(lyness_invariant(2, {0, 0}, w2), {24, 0}));

    Trajectory t = iterate_orbit(make_lyness_stepper(1, {1, 0}), w1, 13, kTol);
    REQUIRE(t.completed());
    const double expect[] = {1, 1, 2, 3, 2};
    for (size_t i = 0; i < t.values.size(); ++i)
        CHECK(close(t.values[i], {expect[i % 5], 0}));
    // The invariant holds on every adjacent window of the orbit.
    for (size_t i = 0; i + 1 < t.values.size(); ++i) {
        std::array<Cx, 2> w{t.values[i], t.values[i + 1]};
        CHECK(close(lyness_invariant(1, {1, 0}, w), {12, 0}));
    }
}

TEST_CASE("cyclic window recurrence rejects bad input") {
    std::array<Cx, 2> zero{Cx{0, 0}, Cx{1, 0}};
    CHECK_THROWS_AS((void)lyness_invariant(1, {1, 0}, zero), std::domain_error);
    std::array<Cx, 2> two{Cx{1, 0}, Cx{1, 0}};
    CHECK_THROWS_AS((void)lyness_invariant(2, {0, 0}, two), std::invalid_argument);
    CHECK_THROWS_AS((void)lyness_invariant(0, {1, 0}, two), std::invalid_argument);
    CHECK_THROWS_AS((void)make_lyness_stepper(0, {1, 0}), std::invalid_argument);

    // A zero oldest entry makes the very first step singular, not an error.
    Trajectory t = iterate_orbit(make_lyness_stepper(1, {1, 0}), zero, 5, kTol);
    CHECK(t.singular_at == 1);
}
