#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "recur/sampling.hpp"

using namespace recur;

namespace {

const Tolerances kTol{};

bool in_box(Cx v, double half = 2.0 + 1e-12) {
    return std::abs(v.real()) <= half && std::abs(v.imag()) <= half;
}

Cx so_step_denominator(EquationId eq, Cx B, Cx zn, Cx zm1) {
    switch (eq) {
        case EquationId::eq4: return 1.0 + B * (zm1 - zn);
        case EquationId::eq5: return 1.0 + B * (zn - zm1);
        case EquationId::eq6: return zm1;
        case EquationId::eq7: return zm1 + B;
        case EquationId::eq8: return B + zn;
        case EquationId::eq9: return zn;
    }
    return Cx{};
}

} // namespace

TEST_CASE("draws are deterministic in (seed, index) and vary with index") {
    for (int kind = 1; kind <= 7; ++kind) {
        RiccatiDraw a = sample_riccati(RiccatiCase(kind - 1), 7, 3);
        RiccatiDraw b = sample_riccati(RiccatiCase(kind - 1), 7, 3);
        CHECK(a.params.alpha == b.params.alpha);
        CHECK(a.params.beta == b.params.beta);
        CHECK(a.params.A == b.params.A);
        CHECK(a.params.B == b.params.B);
        CHECK(a.x0 == b.x0);
        RiccatiDraw c = sample_riccati(RiccatiCase(kind - 1), 7, 4);
        CHECK((a.params.alpha != c.params.alpha || a.x0 != c.x0));
    }
    SoDraw s1 = sample_so(EquationId::eq8, SoCase::b, 11, 0);
    SoDraw s2 = sample_so(EquationId::eq8, SoCase::b, 11, 0);
    CHECK(s1.instance.B == s2.instance.B);
    CHECK(s1.init.z0 == s2.init.z0);
    CHECK(s1.init.zm1 == s2.init.zm1);
    auto w1 = sample_lyness_window(2, 5, 9);
    auto w2 = sample_lyness_window(2, 5, 9);
    REQUIRE(w1.size() == w2.size());
    for (size_t i = 0; i < w1.size(); ++i) CHECK(w1[i] == w2[i]);
}

TEST_CASE("first-order draws land in the requested case inside the box") {
    for (int kind = 1; kind <= 7; ++kind) {
        CAPTURE(kind);
        for (long i = 0; i < 25; ++i) {
            RiccatiDraw d = sample_riccati(RiccatiCase(kind - 1), 42, i);
            CHECK(in_box(d.params.alpha));
            CHECK(in_box(d.params.beta));
            CHECK(in_box(d.params.A));
            CHECK(in_box(d.params.B));
            CHECK(in_box(d.x0));
            auto c = classify_riccati(d.params, kTol);
            CHECK(int(c.kind) + 1 == kind);
        }
    }
}

TEST_CASE("hyperbolic draws stay clear of the rotation ray") {
    for (long i = 0; i < 40; ++i) {
        RiccatiDraw d = sample_riccati(RiccatiCase::case5, 2024, i);
        auto c = classify_riccati(d.params, kTol);
        REQUIRE(c.kind == RiccatiCase::case5);
        bool off_ray = std::abs(c.R.imag()) > 1e-6 || c.R.real() < 0.25 - 1e-6;
        CHECK(off_ray);
    }
}

TEST_CASE("second-order draws land in the requested subcase") {
    for (EquationId eq : {EquationId::eq4, EquationId::eq5, EquationId::eq6,
                          EquationId::eq7, EquationId::eq8, EquationId::eq9}) {
        for (SoCase sub : so_subcases(eq)) {
            CAPTURE(equation_name(eq));
            CAPTURE(so_case_name(sub));
            for (long i = 0; i < 12; ++i) {
                SoDraw d = sample_so(eq, sub, 42, i);
                CHECK(is_finite(d.instance.B));
                CHECK(is_finite(d.init.z0));
                CHECK(is_finite(d.init.zm1));
                auto c = so_classify(d.instance, d.init, kTol);
                CHECK(c.subcase == sub);
            }
        }
    }
}

TEST_CASE("generic draws keep the invariant defined and the orbit alive") {
    for (EquationId eq : {EquationId::eq4, EquationId::eq5, EquationId::eq6,
                          EquationId::eq7, EquationId::eq8, EquationId::eq9}) {
        CAPTURE(equation_name(eq));
        for (long i = 0; i < 10; ++i) {
            SoDraw d = sample_so_generic(eq, 7, i);
            CHECK(so_invariant(d.instance, d.init.z0, d.init.zm1).has_value());
            Cx zm = d.init.zm1, zn = d.init.z0;
            for (int n = 0; n < 40; ++n) {
                Cx den = so_step_denominator(eq, d.instance.B, zn, zm);
                CHECK(std::abs(den) >= 1e-6);
                auto next = so_step(d.instance, zn, zm, kTol);
                REQUIRE(next.has_value());
                zm = zn;
                zn = *next;
            }
        }
    }
}

TEST_CASE("positive windows are real and nondegenerate") {
    for (long k = 1; k <= 3; ++k) {
        for (long i = 0; i < 10; ++i) {
            auto w = sample_lyness_window(k, 13, i);
            REQUIRE(long(w.size()) == k + 1);
            for (Cx x : w) {
                CHECK(x.imag() == 0.0);
                CHECK(x.real() >= 0.5);
                CHECK(x.real() <= 2.5);
            }
        }
    }
    CHECK_THROWS_AS((void)sample_lyness_window(0, 1, 0), std::invalid_argument);
}
