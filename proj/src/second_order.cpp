#include "recur/second_order.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace recur {

namespace {

bool near_zero(Cx v, const Tolerances& tol) {
    return approx_eq(v, Cx{0.0, 0.0}, tol);
}

// Hyperbolic / parabolic / trig trichotomy on the quadratic constant q
// (lambda1*lambda2 = q, lambda1+lambda2 = 1), mirroring classify_riccati's
// treatment of R so delegated evaluations land in the matching case.
enum class Tri { hyperbolic, parabolic, trig };

Tri trichotomy(Cx q, const Tolerances& tol) {
    bool real = std::abs(q.imag()) <= tol.abs + tol.rel * std::abs(q);
    if (real && approx_eq(Cx{q.real(), 0.0}, Cx{0.25, 0.0}, tol)) return Tri::parabolic;
    if (real && q.real() > 0.25) return Tri::trig;
    return Tri::hyperbolic;
}

} // namespace

const char* equation_name(EquationId eq) {
    switch (eq) {
        case EquationId::eq4: return "eq4";
        case EquationId::eq5: return "eq5";
        case EquationId::eq6: return "eq6";
        case EquationId::eq7: return "eq7";
        case EquationId::eq8: return "eq8";
        case EquationId::eq9: return "eq9";
    }
    return "?";
}

std::optional<EquationId> parse_equation(std::string_view name) {
    if (name == "eq4") return EquationId::eq4;
    if (name == "eq5") return EquationId::eq5;
    if (name == "eq6") return EquationId::eq6;
    if (name == "eq7") return EquationId::eq7;
    if (name == "eq8") return EquationId::eq8;
    if (name == "eq9") return EquationId::eq9;
    return std::nullopt;
}

const char* so_case_name(SoCase c) {
    switch (c) {
        case SoCase::i: return "i";
        case SoCase::ii: return "ii";
        case SoCase::iii: return "iii";
        case SoCase::iv_a: return "iv-a";
        case SoCase::iv_b: return "iv-b";
        case SoCase::iv_c: return "iv-c";
        case SoCase::linear: return "linear";
        case SoCase::a: return "a";
        case SoCase::b: return "b";
        case SoCase::c: return "c";
        case SoCase::d: return "d";
    }
    return "?";
}

std::vector<SoCase> so_subcases(EquationId eq) {
    switch (eq) {
        case EquationId::eq4:
        case EquationId::eq5:
            return {SoCase::i, SoCase::ii, SoCase::iii, SoCase::iv_a, SoCase::iv_b, SoCase::iv_c};
        case EquationId::eq6:
            return {SoCase::linear};
        case EquationId::eq7:
            return {SoCase::i, SoCase::ii};
        case EquationId::eq8:
        case EquationId::eq9:
            return {SoCase::a, SoCase::b, SoCase::c, SoCase::d};
    }
    return {};
}

std::optional<Cx> so_step(const SecondOrderInstance& inst, Cx zn, Cx znm1,
                          const Tolerances& tol) {
    const Cx B = inst.B;
    Cx num, den;
    switch (inst.eq) {
        case EquationId::eq4: num = zn; den = 1.0 + B * znm1 - B * zn; break;
        case EquationId::eq5: num = znm1; den = 1.0 + B * zn - B * znm1; break;
        case EquationId::eq6: num = zn * zn + B * zn - B * znm1; den = znm1; break;
        case EquationId::eq7: num = zn * zn + B * zn; den = znm1 + B; break;
        case EquationId::eq8: num = zn * znm1 + B * zn; den = B + zn; break;
        case EquationId::eq9: num = zn * znm1 + B * znm1 - B * zn; den = zn; break;
    }
    if (std::abs(den) <= tol.singular * std::max(1.0, std::abs(num))) return std::nullopt;
    Cx out = num / den;
    if (!is_finite(out)) return std::nullopt;
    return out;
}

std::optional<Cx> so_invariant(const SecondOrderInstance& inst, Cx zn, Cx znm1) {
    const Cx B = inst.B;
    Cx value;
    switch (inst.eq) {
        case EquationId::eq4:
            if (zn == Cx{}) return std::nullopt;
            value = (1.0 / zn + B) * (1.0 + B * znm1);
            break;
        case EquationId::eq5:
            if (zn == Cx{} || znm1 == Cx{}) return std::nullopt;
            value = (1.0 / zn + B) / znm1;
            break;
        case EquationId::eq6:
            if (znm1 == Cx{}) return std::nullopt;
            value = (zn + B) / znm1;
            break;
        case EquationId::eq7:
            if (zn == Cx{}) return std::nullopt;
            value = (znm1 + B) / zn;
            break;
        case EquationId::eq8:
            value = zn * (znm1 + B);
            break;
        case EquationId::eq9:
            value = znm1 * (zn + B);
            break;
    }
    if (!is_finite(value)) return std::nullopt;
    return value;
}

RiccatiParams so_reduced_params(EquationId eq, Cx B, Cx C) {
    switch (eq) {
        case EquationId::eq4: return {Cx{1.0, 0.0}, B, C - B, -B * B};
        case EquationId::eq5: return {Cx{1.0, 0.0}, Cx{}, -B, C};
        case EquationId::eq6: return {-B, C, Cx{1.0, 0.0}, Cx{}};
        case EquationId::eq7: return {B, Cx{1.0, 0.0}, C, Cx{}};
        case EquationId::eq8: return {C, Cx{}, B, Cx{1.0, 0.0}};
        case EquationId::eq9: return {C, -B, Cx{}, Cx{1.0, 0.0}};
    }
    throw std::logic_error("so_reduced_params: unreachable");
}

SecondOrderClassification so_classify(const SecondOrderInstance& inst,
                                      const InitialPair& init, const Tolerances& tol) {
    if (!is_finite(inst.B) || !is_finite(init.z0) || !is_finite(init.zm1))
        throw std::invalid_argument("so_classify: inputs must be finite");
    const Cx B = inst.B;
    if (inst.eq != EquationId::eq6 && near_zero(B, tol))
        throw std::invalid_argument("so_classify: B = 0 is only admissible for eq6");

    const Cx z0 = init.z0, zm1 = init.zm1;

    // Pairs whose very first step is 0/0 have no orbit to classify.
    switch (inst.eq) {
        case EquationId::eq4:
            if (near_zero(z0, tol) && approx_eq(zm1, -1.0 / B, tol))
                throw std::domain_error("so_classify: (0, -1/B) is singular at step 1");
            break;
        case EquationId::eq5:
            if (approx_eq(z0, -1.0 / B, tol) && near_zero(zm1, tol))
                throw std::domain_error("so_classify: (-1/B, 0) is singular at step 1");
            break;
        case EquationId::eq6:
            if (near_zero(zm1, tol))
                throw std::domain_error("so_classify: zm1 = 0 is singular at step 1");
            break;
        case EquationId::eq7:
            if (approx_eq(zm1, -B, tol))
                throw std::domain_error("so_classify: zm1 = -B is singular at step 1");
            break;
        case EquationId::eq8:
            if (approx_eq(z0, -B, tol) && approx_eq(zm1, -B, tol))
                throw std::domain_error("so_classify: (-B, -B) is singular at step 1");
            break;
        case EquationId::eq9:
            if (near_zero(z0, tol) && near_zero(zm1, tol))
                throw std::domain_error("so_classify: (0, 0) is singular at step 1");
            break;
    }

    SecondOrderClassification c{};
    c.instance = inst;
    c.init = init;
    c.tol = tol;
    if (auto inv = so_invariant(inst, z0, zm1)) c.C = *inv;

    // Fills the trichotomy payload shared by the non-degenerate subcases,
    // labeling them hyp/par/trig in that order.
    auto classify_quadratic = [&](Cx q, SoCase hyp, SoCase par, SoCase trig) {
        c.reduced = classify_riccati(so_reduced_params(inst.eq, B, c.C), tol);
        switch (trichotomy(q, tol)) {
            case Tri::hyperbolic: {
                c.subcase = hyp;
                Cx s = csqrt_principal(Cx{1.0, 0.0} - 4.0 * q);
                c.lambda1 = (Cx{1.0, 0.0} - s) / 2.0;
                c.lambda2 = (Cx{1.0, 0.0} + s) / 2.0;
                break;
            }
            case Tri::parabolic:
                c.subcase = par;
                break;
            case Tri::trig:
                c.subcase = trig;
                c.rho = std::acos(0.5 * std::sqrt(1.0 / q.real()));
                break;
        }
    };

    switch (inst.eq) {
        case EquationId::eq4: {
            if (near_zero(z0, tol)) { c.subcase = SoCase::i; return c; }
            if (approx_eq(z0, -1.0 / B, tol)) { c.subcase = SoCase::iii; return c; }
            if (approx_eq(zm1, -1.0 / B, tol)) { c.subcase = SoCase::ii; return c; }
            classify_quadratic(B / c.C, SoCase::iv_a, SoCase::iv_b, SoCase::iv_c);
            if (c.subcase == SoCase::iv_a) {
                c.M1 = c.C - B - B * B * z0 - c.C * c.lambda1;
                c.M2 = c.C * c.lambda2 + B + B * B * z0 - c.C;
            } else if (c.subcase == SoCase::iv_c) {
                c.w0 = (-B * B * z0 + c.C - B) / c.C;
            }
            return c;
        }
        case EquationId::eq5: {
            if (approx_eq(z0, -1.0 / B, tol)) { c.subcase = SoCase::iii; return c; }
            if (near_zero(z0, tol)) { c.subcase = SoCase::i; return c; }
            if (near_zero(zm1, tol)) { c.subcase = SoCase::ii; return c; }
            classify_quadratic(-c.C / (B * B), SoCase::iv_a, SoCase::iv_b, SoCase::iv_c);
            if (c.subcase == SoCase::iv_c)
                c.D = B * std::sqrt(std::max(0.0, -4.0 * (c.C / (B * B)).real() - 1.0));
            return c;
        }
        case EquationId::eq6:
            c.subcase = SoCase::linear;
            return c;
        case EquationId::eq7:
            c.subcase = near_zero(z0, tol) ? SoCase::i : SoCase::ii;
            return c;
        case EquationId::eq8:
        case EquationId::eq9: {
            if (near_zero(c.C, tol)) { c.subcase = SoCase::a; return c; }
            classify_quadratic(-c.C / (B * B), SoCase::b, SoCase::c, SoCase::d);
            if (c.subcase == SoCase::d)
                c.D = B * std::sqrt(std::max(0.0, -4.0 * (c.C / (B * B)).real() - 1.0));
            return c;
        }
    }
    throw std::logic_error("so_classify: unreachable");
}

ClosedForm so_closed_form(const SecondOrderClassification& c, long n) {
    if (n < -1) throw std::invalid_argument("so_closed_form: n must be >= -1");
    if (n == -1) return c.init.zm1;
    if (n == 0) return c.init.z0;
    const Cx B = c.instance.B;
    const Cx z0 = c.init.z0, zm1 = c.init.zm1;
    const Tolerances& tol = c.tol;

    switch (c.instance.eq) {
        case EquationId::eq4:
            switch (c.subcase) {
                case SoCase::i:
                    return Cx{}; // z0 = 0 pins the whole orbit at 0

                case SoCase::ii: {
                    // Odd indices sit at -1/B; even index 2m has denominator
                    // proportional to (m+1) + m*B*z0.
                    Cx Bz0 = B * z0;
                    for (long m = 1; 2 * m <= n; ++m) {
                        Cx dm = Cx{double(m + 1), 0.0} + double(m) * Bz0;
                        if (std::abs(dm) <=
                            tol.singular * (double(m + 1) + double(m) * std::abs(Bz0)))
                            return UndefinedAt{2 * m};
                    }
                    if (n % 2 == 1) return -1.0 / B;
                    long m = n / 2;
                    Cx num = Cx{double(m + 2), 0.0} + double(m + 1) * Bz0;
                    Cx den = B * (Cx{double(m + 1), 0.0} + double(m) * Bz0);
                    Cx value = num / den - 2.0 / B;
                    if (!is_finite(value)) return UndefinedAt{n};
                    return value;
                }

                case SoCase::iii: {
                    // Even indices sit at -1/B; odd index 2m+1 has denominator
                    // proportional to (m+2) + (m+1)*B*zm1.
                    Cx Bzm1 = B * zm1;
                    for (long m = 0; 2 * m + 1 <= n; ++m) {
                        Cx dm = Cx{double(m + 2), 0.0} + double(m + 1) * Bzm1;
                        if (std::abs(dm) <=
                            tol.singular * (double(m + 2) + double(m + 1) * std::abs(Bzm1)))
                            return UndefinedAt{2 * m + 1};
                    }
                    if (n % 2 == 0) return -1.0 / B;
                    long m = (n - 1) / 2;
                    Cx num = Cx{double(m + 3), 0.0} + double(m + 2) * Bzm1;
                    Cx den = B * (Cx{double(m + 2), 0.0} + double(m + 1) * Bzm1);
                    Cx value = num / den - 2.0 / B;
                    if (!is_finite(value)) return UndefinedAt{n};
                    return value;
                }

                default:
                    return riccati_closed_form(c.reduced, z0, n);
            }

        case EquationId::eq5:
            switch (c.subcase) {
                case SoCase::iii:
                    return -1.0 / B; // fixed point of the whole recurrence

                case SoCase::i: {
                    // Even indices are 0; odd index 2m+1 has denominator
                    // proportional to 1 - (m+1)*B*zm1.
                    Cx Bzm1 = B * zm1;
                    for (long m = 0; 2 * m + 1 <= n; ++m) {
                        Cx dm = Cx{1.0, 0.0} - double(m + 1) * Bzm1;
                        if (std::abs(dm) <=
                            tol.singular * (1.0 + double(m + 1) * std::abs(Bzm1)))
                            return UndefinedAt{2 * m + 1};
                    }
                    if (n % 2 == 0) return Cx{};
                    long m = (n - 1) / 2;
                    Cx num = Cx{1.0, 0.0} - double(m + 2) * Bzm1;
                    Cx den = Cx{1.0, 0.0} - double(m + 1) * Bzm1;
                    Cx value = (num / den) / (-B) + 1.0 / B;
                    if (!is_finite(value)) return UndefinedAt{n};
                    return value;
                }

                case SoCase::ii: {
                    // Odd indices are 0; even index 2m has denominator
                    // proportional to 1 - m*B*z0.
                    Cx Bz0 = B * z0;
                    for (long m = 1; 2 * m <= n; ++m) {
                        Cx dm = Cx{1.0, 0.0} - double(m) * Bz0;
                        if (std::abs(dm) <= tol.singular * (1.0 + double(m) * std::abs(Bz0)))
                            return UndefinedAt{2 * m};
                    }
                    if (n % 2 == 1) return Cx{};
                    long m = n / 2;
                    Cx num = Cx{1.0, 0.0} - double(m + 1) * Bz0;
                    Cx den = Cx{1.0, 0.0} - double(m) * Bz0;
                    Cx value = (num / den) / (-B) + 1.0 / B;
                    if (!is_finite(value)) return UndefinedAt{n};
                    return value;
                }

                default:
                    return riccati_closed_form(c.reduced, z0, n);
            }

        case EquationId::eq6: {
            // z_{k+1} = C*z_k - B; a zero z_k kills the step to z_{k+2}.
            Cx z = z0;
            double scale = std::abs(z0);
            for (long k = 0; k <= n - 2; ++k) {
                if (std::abs(z) <= tol.singular * std::max(1.0, scale))
                    return UndefinedAt{k + 2};
                z = c.C * z - B;
                scale = std::abs(c.C) * scale + std::abs(B);
            }
            z = c.C * z - B;
            if (!is_finite(z)) return UndefinedAt{n};
            return z;
        }

        case EquationId::eq7: {
            if (c.subcase == SoCase::i) return Cx{};
            // z_{k+1} = (z_k + B)/C; z_k = -B kills the step to z_{k+2}.
            Cx z = z0;
            double scale = std::abs(z0);
            double absB = std::abs(B), absC = std::abs(c.C);
            for (long k = 0; k <= n - 2; ++k) {
                if (std::abs(z + B) <= tol.singular * std::max(1.0, scale + absB))
                    return UndefinedAt{k + 2};
                z = (z + B) / c.C;
                scale = (scale + absB) / absC;
            }
            z = (z + B) / c.C;
            if (!is_finite(z)) return UndefinedAt{n};
            return z;
        }

        case EquationId::eq8:
            if (c.subcase == SoCase::a) return Cx{}; // C = 0: zeros from step 1 on
            return riccati_closed_form(c.reduced, z0, n);

        case EquationId::eq9:
            if (c.subcase == SoCase::a) return -B; // C = 0: constant -B from step 1 on
            return riccati_closed_form(c.reduced, z0, n);
    }
    throw std::logic_error("so_closed_form: unreachable");
}

std::optional<SoMembership> so_forbidden_contains(const SecondOrderInstance& inst,
                                                  const InitialPair& init, long max_n,
                                                  const Tolerances& tol) {
    if (max_n < 1) throw std::invalid_argument("so_forbidden_contains: max_n must be >= 1");
    const Cx B = inst.B;
    if (inst.eq != EquationId::eq6 && near_zero(B, tol))
        throw std::invalid_argument("so_forbidden_contains: B = 0 is only admissible for eq6");
    const Cx z0 = init.z0, zm1 = init.zm1;

    switch (inst.eq) {
        case EquationId::eq4: {
            Cx pole = -1.0 / B;
            // Death steps along the zm1 = -1/B line are even, along z0 = -1/B
            // odd; both are indexed by the 1/4-constant map's point family.
            RiccatiParams par{Cx{-1.0, 0.0}, Cx{}, 2.0 * B, B * B};
            if (approx_eq(zm1, pole, tol)) {
                if (near_zero(z0, tol)) return SoMembership{"seed", 1};
                auto rc = classify_riccati(par, tol);
                if (auto m = riccati_forbidden_contains(rc, z0, max_n, tol))
                    return SoMembership{"zm1-pole", 2 * *m};
                return std::nullopt;
            }
            if (approx_eq(z0, pole, tol)) {
                auto rc = classify_riccati(par, tol);
                if (auto m = riccati_forbidden_contains(rc, zm1, max_n, tol))
                    return SoMembership{"z0-pole", 2 * *m - 1};
                return std::nullopt;
            }
            if (near_zero(z0, tol)) return std::nullopt; // constant-zero orbit
            Cx C = (1.0 / z0 + B) * (1.0 + B * zm1);
            auto rc = classify_riccati(so_reduced_params(inst.eq, B, C), tol);
            if (auto m = riccati_forbidden_contains(rc, z0, max_n, tol))
                return SoMembership{"reduced", *m};
            return std::nullopt;
        }

        case EquationId::eq5: {
            Cx pole = -1.0 / B;
            RiccatiParams par{Cx{}, Cx{1.0, 0.0}, Cx{1.0, 0.0}, -B};
            if (approx_eq(z0, pole, tol)) {
                if (near_zero(zm1, tol)) return SoMembership{"seed", 1};
                return std::nullopt; // constant orbit -1/B
            }
            if (near_zero(z0, tol)) {
                auto rc = classify_riccati(par, tol);
                if (auto m = riccati_forbidden_contains(rc, zm1, max_n, tol))
                    return SoMembership{"z0-zero", 2 * *m - 1};
                return std::nullopt;
            }
            if (near_zero(zm1, tol)) {
                auto rc = classify_riccati(par, tol);
                if (auto m = riccati_forbidden_contains(rc, z0, max_n, tol))
                    return SoMembership{"zm1-zero", 2 * *m};
                return std::nullopt;
            }
            Cx C = (1.0 / z0 + B) / zm1;
            auto rc = classify_riccati(so_reduced_params(inst.eq, B, C), tol);
            if (auto m = riccati_forbidden_contains(rc, z0, max_n, tol))
                return SoMembership{"reduced", *m};
            return std::nullopt;
        }

        case EquationId::eq6: {
            if (near_zero(zm1, tol)) return SoMembership{"axis", 1};
            if (near_zero(z0, tol)) return SoMembership{"axis", 2};
            Cx C = (z0 + B) / zm1;
            const char* fam = approx_eq(C, Cx{1.0, 0.0}, tol) ? "arith" : "geom";
            Cx z = z0;
            double scale = std::abs(z0);
            for (long k = 1; k <= max_n; ++k) {
                z = C * z - B;
                scale = std::abs(C) * scale + std::abs(B);
                if (std::abs(z) <= tol.abs + tol.rel * std::max(1.0, scale))
                    return SoMembership{fam, k + 2};
            }
            return std::nullopt;
        }

        case EquationId::eq7: {
            if (approx_eq(zm1, -B, tol)) return SoMembership{"axis", 1};
            if (approx_eq(z0, -B, tol)) return SoMembership{"axis", 2};
            if (near_zero(z0, tol)) return std::nullopt; // zeros from step 1 on
            Cx C = (zm1 + B) / z0;
            const char* fam = approx_eq(C, Cx{1.0, 0.0}, tol) ? "arith" : "geom";
            Cx z = z0;
            double scale = std::abs(z0);
            double absB = std::abs(B), absC = std::abs(C);
            for (long k = 1; k <= max_n; ++k) {
                z = (z + B) / C;
                scale = (scale + absB) / absC;
                if (std::abs(z + B) <= tol.abs + tol.rel * std::max(1.0, scale + absB))
                    return SoMembership{fam, k + 2};
            }
            return std::nullopt;
        }

        case EquationId::eq8: {
            if (approx_eq(z0, -B, tol) && approx_eq(zm1, -B, tol))
                return SoMembership{"seed", 1};
            Cx C = z0 * (zm1 + B);
            auto rc = classify_riccati(so_reduced_params(inst.eq, B, C), tol);
            if (auto m = riccati_forbidden_contains(rc, z0, max_n, tol))
                return SoMembership{"reduced", *m};
            return std::nullopt;
        }

        case EquationId::eq9: {
            if (near_zero(z0, tol) && near_zero(zm1, tol))
                return SoMembership{"seed", 1};
            Cx C = zm1 * (z0 + B);
            auto rc = classify_riccati(so_reduced_params(inst.eq, B, C), tol);
            if (auto m = riccati_forbidden_contains(rc, z0, max_n, tol))
                return SoMembership{"reduced", *m};
            return std::nullopt;
        }
    }
    throw std::logic_error("so_forbidden_contains: unreachable");
}

namespace {

// Guard margin for sampling-time degeneracy skips: family points closer than
// this to an earlier branch (or to a coordinate that breaks the paired-value
// construction) are dropped rather than emitted with a wrong death step.
constexpr double kSampleSkip = 1e-6;

bool skip_near(Cx a, Cx b) { return std::abs(a - b) <= kSampleSkip; }

} // namespace

ForbiddenSample so_forbidden_sample(const SecondOrderInstance& inst, long n_max,
                                    const SamplingPlan& plan) {
    if (n_max < 1) throw std::invalid_argument("so_forbidden_sample: n_max must be >= 1");
    if (plan.c_grid.empty() && plan.line_grid.empty())
        throw EmptyGridError("so_forbidden_sample: sampling plan is empty");
    const Cx B = inst.B;
    if (inst.eq != EquationId::eq6 && B == Cx{})
        throw std::invalid_argument("so_forbidden_sample: B = 0 is only admissible for eq6");

    ForbiddenSample out;

    // Rotation-angle families can revisit an earlier point, in which case the
    // orbit dies at the earlier index; keep only first occurrences.
    auto is_dup = [](const std::vector<Cx>& seen, Cx v) {
        for (Cx s : seen)
            if (std::abs(v - s) <= 1e-9 * std::max(1.0, std::abs(s))) return true;
        return false;
    };

    // Emits the per-C family of the reduced first-order map; pair_of turns a
    // forbidden value of the reduced map into the (z0, zm1) pair with that C,
    // or refuses when the construction degenerates.
    auto emit_reduced =
        [&](Cx C, const std::function<std::optional<std::pair<Cx, Cx>>(Cx)>& pair_of) {
            auto rc = classify_riccati(so_reduced_params(inst.eq, B, C), Tolerances{});
            std::vector<Cx> seen;
            for (long n = 1; n <= n_max; ++n) {
                ForbiddenPoint fp = riccati_forbidden_point(rc, n);
                if (fp.kind != ForbiddenPoint::Kind::point) continue;
                if (is_dup(seen, fp.value)) continue;
                seen.push_back(fp.value);
                if (auto pr = pair_of(fp.value))
                    out.points.push_back({pr->first, pr->second, "reduced", n});
            }
        };

    // Roots of unity make a geometric family point collide with an earlier
    // orbit element (or put zm1 on the death line); C^i = 1 for i <= m+1.
    auto unity_collision = [&](Cx C, long m) {
        Cx ci{1.0, 0.0};
        for (long i = 1; i <= m + 1; ++i) {
            ci *= C;
            if (std::abs(ci - 1.0) <= kSampleSkip) return true;
        }
        return false;
    };

    switch (inst.eq) {
        case EquationId::eq4: {
            Cx pole = -1.0 / B;
            out.points.push_back({Cx{}, pole, "seed", 1});
            for (long m = 1; m <= n_max; ++m) {
                Cx a = pole * (double(m + 1) / double(m));
                out.points.push_back({a, pole, "zm1-pole", 2 * m});
                out.points.push_back({pole, a, "z0-pole", 2 * m - 1});
            }
            for (Cx C : plan.c_grid) {
                if (skip_near(C, Cx{})) continue;
                emit_reduced(C, [&](Cx p) -> std::optional<std::pair<Cx, Cx>> {
                    if (skip_near(p, Cx{}) || skip_near(p, pole)) return std::nullopt;
                    Cx zm1 = (C * p - B * p - 1.0) / (B + B * B * p);
                    return std::pair{p, zm1};
                });
            }
            break;
        }

        case EquationId::eq5: {
            Cx pole = -1.0 / B;
            out.points.push_back({pole, Cx{}, "seed", 1});
            for (long m = 1; m <= n_max; ++m) {
                Cx a = 1.0 / (B * double(m));
                out.points.push_back({Cx{}, a, "z0-zero", 2 * m - 1});
                out.points.push_back({a, Cx{}, "zm1-zero", 2 * m});
            }
            for (Cx C : plan.c_grid) {
                if (skip_near(C, Cx{})) continue;
                emit_reduced(C, [&](Cx p) -> std::optional<std::pair<Cx, Cx>> {
                    if (skip_near(p, Cx{}) || skip_near(p, pole)) return std::nullopt;
                    Cx zm1 = (B * p + 1.0) / (C * p);
                    return std::pair{p, zm1};
                });
            }
            break;
        }

        case EquationId::eq6: {
            out.lines.push_back({ForbiddenLine::Coord::zm1, Cx{}, "axis", 1});
            out.lines.push_back({ForbiddenLine::Coord::z0, Cx{}, "axis", 2});
            for (Cx t : plan.line_grid) {
                out.points.push_back({t, Cx{}, "axis", 1});
                if (!skip_near(t, Cx{})) out.points.push_back({Cx{}, t, "axis", 2});
            }
            if (std::abs(B) > kSampleSkip) {
                for (long m = 1; m <= n_max; ++m)
                    out.points.push_back(
                        {double(m) * B, double(m) * B + B, "arith", m + 2});
                for (Cx C : plan.c_grid) {
                    if (skip_near(C, Cx{})) continue;
                    for (long m = 1; m <= n_max; ++m) {
                        if (unity_collision(C, m)) continue;
                        Cx cm = std::pow(C, double(m));
                        Cx z0 = (B - B * cm) / (cm - cm * C);
                        Cx zm1 = (B - B * cm * C) / (cm * C - cm * C * C);
                        out.points.push_back({z0, zm1, "geom", m + 2});
                    }
                }
            }
            break;
        }

        case EquationId::eq7: {
            out.lines.push_back({ForbiddenLine::Coord::zm1, -B, "axis", 1});
            out.lines.push_back({ForbiddenLine::Coord::z0, -B, "axis", 2});
            for (Cx t : plan.line_grid) {
                out.points.push_back({t, -B, "axis", 1});
                if (!skip_near(t, -B)) out.points.push_back({-B, t, "axis", 2});
            }
            for (long m = 1; m <= n_max; ++m)
                out.points.push_back(
                    {-double(m) * B - B, -double(m) * B - 2.0 * B, "arith", m + 2});
            for (Cx C : plan.c_grid) {
                if (skip_near(C, Cx{})) continue;
                for (long m = 1; m <= n_max; ++m) {
                    if (unity_collision(C, m)) continue;
                    Cx cm1 = std::pow(C, double(m + 1));
                    Cx z0 = (B - B * cm1) / (C - 1.0);
                    Cx zm1 = (B - B * cm1 * C) / (C - 1.0);
                    out.points.push_back({z0, zm1, "geom", m + 2});
                }
            }
            break;
        }

        case EquationId::eq8: {
            out.points.push_back({-B, -B, "seed", 1});
            for (Cx C : plan.c_grid) {
                if (skip_near(C, Cx{})) continue;
                emit_reduced(C, [&](Cx p) -> std::optional<std::pair<Cx, Cx>> {
                    if (skip_near(p, Cx{})) return std::nullopt;
                    return std::pair{p, C / p - B};
                });
            }
            break;
        }

        case EquationId::eq9: {
            out.points.push_back({Cx{}, Cx{}, "seed", 1});
            for (Cx C : plan.c_grid) {
                if (skip_near(C, Cx{})) continue;
                emit_reduced(C, [&](Cx p) -> std::optional<std::pair<Cx, Cx>> {
                    if (skip_near(p, -B)) return std::nullopt;
                    return std::pair{p, C / (p + B)};
                });
            }
            break;
        }
    }
    return out;
}

} // namespace recur
