#include "recur/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace recur {

namespace {

constexpr double kMargin = 1e-6; // kept distance from boundaries and forbidden points
constexpr long kProbeSteps = 30;
constexpr long kDriftProbeSteps = 40;
constexpr int kMaxAttempts = 100000;

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Rng {
    std::mt19937_64 engine;
    Rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
        : engine(mix64(seed ^ mix64(tag ^ mix64(index)))) {}
    // Top 53 bits mapped to [0,1) by hand so draws do not depend on a
    // standard library's distribution implementation.
    double uni() { return double(engine() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * uni(); }
    Cx box() { return {range(-2.0, 2.0), range(-2.0, 2.0)}; }
    bool coin() { return (engine() & 1) != 0; }
};

bool in_box(Cx v) { return std::abs(v.real()) <= 2.0 && std::abs(v.imag()) <= 2.0; }

bool orbit_clean_riccati(const RiccatiParams& p, Cx x0, long steps) {
    Tolerances probe{1e-9, 1e-12, kMargin};
    Cx x = x0;
    for (long i = 0; i < steps; ++i) {
        auto nx = riccati_step(p, x, probe);
        if (!nx) return false;
        x = *nx;
    }
    return true;
}

bool orbit_clean_so(const SecondOrderInstance& inst, const InitialPair& init, long steps) {
    Tolerances probe{1e-9, 1e-12, kMargin};
    Cx zm = init.zm1, zn = init.z0;
    for (long i = 0; i < steps; ++i) {
        auto nx = so_step(inst, zn, zm, probe);
        if (!nx) return false;
        zm = zn;
        zn = *nx;
    }
    return true;
}

bool near_forbidden(const RiccatiClassification& rc, Cx x0, long horizon) {
    for (long n = 1; n <= horizon; ++n) {
        ForbiddenPoint fp = riccati_forbidden_point(rc, n);
        if (fp.kind == ForbiddenPoint::Kind::whole_plane) return true;
        if (fp.kind == ForbiddenPoint::Kind::point && std::abs(x0 - fp.value) <= kMargin)
            return true;
    }
    return false;
}

Cx so_den(EquationId eq, Cx B, Cx zn, Cx znm1) {
    switch (eq) {
        case EquationId::eq4: return 1.0 + B * znm1 - B * zn;
        case EquationId::eq5: return 1.0 + B * zn - B * znm1;
        case EquationId::eq6: return znm1;
        case EquationId::eq7: return znm1 + B;
        case EquationId::eq8: return B + zn;
        case EquationId::eq9: return zn;
    }
    return {};
}

[[noreturn]] void exhausted(const char* what) {
    throw std::runtime_error(std::string("sampling: no admissible draw found for ") + what);
}

} // namespace

RiccatiDraw sample_riccati(RiccatiCase kind, std::uint64_t seed, long index) {
    Rng rng(seed, 0x5243ULL * 31 + std::uint64_t(kind), std::uint64_t(index));
    const Tolerances tol{};

    if (kind == RiccatiCase::case1) // undefined map: nothing to probe or avoid
        return {RiccatiParams{rng.box(), rng.box(), Cx{}, Cx{}}, rng.box()};

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        RiccatiParams p{};
        Cx x0 = rng.box();
        switch (kind) {
            case RiccatiCase::case2:
                p = {rng.box(), rng.box(), rng.box(), Cx{}};
                if (std::abs(p.A) <= 0.05) continue;
                break;

            case RiccatiCase::case3: {
                Cx beta = rng.box(), A = rng.box(), B = rng.box();
                if (std::abs(B) <= 0.05) continue;
                if (std::abs(beta + A) <= 0.05) continue; // constant must stay off the pole
                p = {beta * A / B, beta, A, B};
                if (!in_box(p.alpha)) continue;
                break;
            }

            case RiccatiCase::case4: {
                Cx alpha = rng.box(), A = rng.box(), B = rng.box();
                if (std::abs(B) <= 0.05) continue;
                p = {alpha, -A, A, B};
                if (std::abs(p.alpha * p.B - p.beta * p.A) <= kMargin) continue;
                break;
            }

            case RiccatiCase::case5: {
                p = {rng.box(), rng.box(), rng.box(), rng.box()};
                if (std::abs(p.B) <= 0.05) continue;
                if (std::abs(p.beta + p.A) <= 0.05) continue;
                if (std::abs(p.alpha * p.B - p.beta * p.A) <= kMargin) continue;
                Cx bpa = p.beta + p.A;
                Cx R = (p.beta * p.A - p.alpha * p.B) / (bpa * bpa);
                if (std::abs(R.imag()) <= kMargin && R.real() >= 0.25 - kMargin) continue;
                break;
            }

            case RiccatiCase::case6: {
                Cx beta = rng.box(), A = rng.box(), B = rng.box();
                if (std::abs(B) <= 0.05) continue;
                if (std::abs(beta + A) <= 0.3) continue; // keep R = 1/4 well conditioned
                Cx bpa = beta + A;
                p = {(beta * A - 0.25 * bpa * bpa) / B, beta, A, B};
                if (!in_box(p.alpha)) continue;
                break;
            }

            case RiccatiCase::case7: {
                Cx beta = rng.box(), A = rng.box(), B = rng.box();
                double R0 = rng.range(0.3, 2.0);
                if (std::abs(B) <= 0.05) continue;
                if (std::abs(beta + A) <= 0.3) continue;
                Cx bpa = beta + A;
                p = {(beta * A - R0 * bpa * bpa) / B, beta, A, B};
                if (!in_box(p.alpha)) continue;
                break;
            }

            default:
                break;
        }
        RiccatiClassification rc = classify_riccati(p, tol);
        if (rc.kind != kind) continue;
        if (rc.kind != RiccatiCase::case2 && near_forbidden(rc, x0, kProbeSteps)) continue;
        if (!orbit_clean_riccati(p, x0, kProbeSteps)) continue;
        return {p, x0};
    }
    exhausted(riccati_case_name(kind));
}

SoDraw sample_so(EquationId eq, SoCase subcase, std::uint64_t seed, long index) {
    Rng rng(seed, 0x534FULL * 4096 + std::uint64_t(eq) * 16 + std::uint64_t(subcase),
            std::uint64_t(index));
    const Tolerances tol{};

    // Rejects a quadratic constant on the closed half line [1/4, inf) or
    // within the margin of it, where the subcase trichotomy flips.
    auto hyperbolic_safe = [](Cx q) {
        return !(std::abs(q.imag()) <= kMargin && q.real() >= 0.25 - kMargin);
    };

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Cx B = rng.box();
        if (eq != EquationId::eq6 && std::abs(B) <= 0.05) continue;
        SecondOrderInstance inst{eq, B};
        InitialPair init{};
        bool ok = true;

        switch (eq) {
            case EquationId::eq4: {
                Cx pole = -1.0 / B;
                switch (subcase) {
                    case SoCase::i:
                        init = {Cx{}, rng.box()};
                        ok = std::abs(init.zm1 - pole) > kMargin;
                        break;
                    case SoCase::ii:
                        init = {rng.box(), pole};
                        ok = std::abs(init.z0) > kMargin;
                        break;
                    case SoCase::iii:
                        init = {pole, rng.box()};
                        break;
                    case SoCase::iv_a: {
                        init = {rng.box(), rng.box()};
                        if (std::abs(init.z0) <= 1e-3 || std::abs(init.z0 - pole) <= 1e-3 ||
                            std::abs(init.zm1 - pole) <= 1e-3) {
                            ok = false;
                            break;
                        }
                        Cx C = (1.0 / init.z0 + B) * (1.0 + B * init.zm1);
                        ok = hyperbolic_safe(B / C);
                        break;
                    }
                    case SoCase::iv_b: {
                        Cx z0 = rng.box();
                        if (std::abs(z0) <= 0.05 || std::abs(1.0 + B * z0) <= 0.05) {
                            ok = false;
                            break;
                        }
                        init = {z0, (3.0 * B * z0 - 1.0) / (B + B * B * z0)}; // C = 4B
                        break;
                    }
                    case SoCase::iv_c: {
                        Cx z0 = rng.box();
                        double t = rng.range(0.3, 3.7); // C = tB puts B/C in (1/4, 10/3)
                        if (std::abs(z0) <= 0.05 || std::abs(1.0 + B * z0) <= 0.05) {
                            ok = false;
                            break;
                        }
                        init = {z0, (t * B * z0 / (1.0 + B * z0) - 1.0) / B};
                        break;
                    }
                    default:
                        ok = false;
                        break;
                }
                break;
            }

            case EquationId::eq5: {
                Cx pole = -1.0 / B;
                switch (subcase) {
                    case SoCase::iii:
                        init = {pole, rng.box()};
                        ok = std::abs(init.zm1) > kMargin;
                        break;
                    case SoCase::i:
                        init = {Cx{}, rng.box()};
                        break;
                    case SoCase::ii:
                        init = {rng.box(), Cx{}};
                        ok = std::abs(init.z0 - pole) > kMargin;
                        break;
                    case SoCase::iv_a: {
                        init = {rng.box(), rng.box()};
                        if (std::abs(init.z0) <= 1e-3 || std::abs(init.zm1) <= 1e-3 ||
                            std::abs(init.z0 - pole) <= 1e-3) {
                            ok = false;
                            break;
                        }
                        Cx C = (1.0 / init.z0 + B) / init.zm1;
                        ok = hyperbolic_safe(-C / (B * B));
                        break;
                    }
                    case SoCase::iv_b: {
                        Cx z0 = rng.box();
                        if (std::abs(z0) <= 0.05 || std::abs(z0 - pole) <= 0.05) {
                            ok = false;
                            break;
                        }
                        init = {z0, (1.0 / z0 + B) / (-B * B / 4.0)};
                        break;
                    }
                    case SoCase::iv_c: {
                        Cx z0 = rng.box();
                        double q = rng.range(0.3, 2.0); // -C/B^2 = q > 1/4
                        if (std::abs(z0) <= 0.05 || std::abs(z0 - pole) <= 0.05) {
                            ok = false;
                            break;
                        }
                        init = {z0, (1.0 / z0 + B) / (-q * B * B)};
                        break;
                    }
                    default:
                        ok = false;
                        break;
                }
                break;
            }

            case EquationId::eq6:
                init = {rng.box(), rng.box()};
                ok = subcase == SoCase::linear && std::abs(init.zm1) > 0.05;
                break;

            case EquationId::eq7:
                if (subcase == SoCase::i) {
                    init = {Cx{}, rng.box()};
                    ok = std::abs(init.zm1 + B) > kMargin;
                } else if (subcase == SoCase::ii) {
                    init = {rng.box(), rng.box()};
                    ok = std::abs(init.z0) > 1e-3 && std::abs(init.zm1 + B) > 1e-3;
                } else {
                    ok = false;
                }
                break;

            case EquationId::eq8:
                switch (subcase) {
                    case SoCase::a:
                        if (rng.coin()) {
                            init = {Cx{}, rng.box()};
                        } else {
                            init = {rng.box(), -B};
                            ok = std::abs(init.z0 + B) > kMargin;
                        }
                        break;
                    case SoCase::b: {
                        init = {rng.box(), rng.box()};
                        Cx C = init.z0 * (init.zm1 + B);
                        if (std::abs(C) <= 1e-3 || std::abs(init.z0 + B) <= 1e-3) {
                            ok = false;
                            break;
                        }
                        ok = hyperbolic_safe(-C / (B * B));
                        break;
                    }
                    case SoCase::c: {
                        Cx z0 = rng.box();
                        if (std::abs(z0) <= 0.05 || std::abs(z0 + B) <= 0.05) {
                            ok = false;
                            break;
                        }
                        init = {z0, (-B * B / 4.0) / z0 - B};
                        break;
                    }
                    case SoCase::d: {
                        Cx z0 = rng.box();
                        double q = rng.range(0.3, 2.0);
                        if (std::abs(z0) <= 0.05 || std::abs(z0 + B) <= 0.05) {
                            ok = false;
                            break;
                        }
                        init = {z0, (-q * B * B) / z0 - B};
                        break;
                    }
                    default:
                        ok = false;
                        break;
                }
                break;

            case EquationId::eq9:
                switch (subcase) {
                    case SoCase::a:
                        if (rng.coin()) {
                            init = {rng.box(), Cx{}};
                            ok = std::abs(init.z0) > kMargin;
                        } else {
                            init = {-B, rng.box()};
                        }
                        break;
                    case SoCase::b: {
                        init = {rng.box(), rng.box()};
                        Cx C = init.zm1 * (init.z0 + B);
                        if (std::abs(C) <= 1e-3 || std::abs(init.z0) <= 1e-3) {
                            ok = false;
                            break;
                        }
                        ok = hyperbolic_safe(-C / (B * B));
                        break;
                    }
                    case SoCase::c: {
                        Cx z0 = rng.box();
                        if (std::abs(z0) <= 0.05 || std::abs(z0 + B) <= 0.05) {
                            ok = false;
                            break;
                        }
                        init = {z0, (-B * B / 4.0) / (z0 + B)};
                        break;
                    }
                    case SoCase::d: {
                        Cx z0 = rng.box();
                        double q = rng.range(0.3, 2.0);
                        if (std::abs(z0) <= 0.05 || std::abs(z0 + B) <= 0.05) {
                            ok = false;
                            break;
                        }
                        init = {z0, (-q * B * B) / (z0 + B)};
                        break;
                    }
                    default:
                        ok = false;
                        break;
                }
                break;
        }

        if (!ok || !is_finite(init.z0) || !is_finite(init.zm1)) continue;
        try {
            if (so_classify(inst, init, tol).subcase != subcase) continue;
        } catch (const std::exception&) {
            continue;
        }
        if (!orbit_clean_so(inst, init, kProbeSteps)) continue;
        return {inst, init};
    }
    exhausted(equation_name(eq));
}

SoDraw sample_so_generic(EquationId eq, std::uint64_t seed, long index) {
    Rng rng(seed, 0x474EULL * 64 + std::uint64_t(eq), std::uint64_t(index));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Cx B = rng.box();
        if (eq != EquationId::eq6 && std::abs(B) <= kMargin) continue;
        SecondOrderInstance inst{eq, B};
        InitialPair init{rng.box(), rng.box()};
        if (!so_invariant(inst, init.z0, init.zm1)) continue;

        Cx zm = init.zm1, zn = init.z0;
        bool clean = true;
        for (long i = 0; i < kDriftProbeSteps; ++i) {
            if (std::abs(so_den(eq, B, zn, zm)) < kMargin) {
                clean = false;
                break;
            }
            auto nx = so_step(inst, zn, zm, Tolerances{});
            if (!nx) {
                clean = false;
                break;
            }
            zm = zn;
            zn = *nx;
        }
        if (!clean) continue;
        return {inst, init};
    }
    exhausted(equation_name(eq));
}

std::vector<Cx> sample_lyness_window(long k, std::uint64_t seed, long index) {
    if (k < 1) throw std::invalid_argument("sample_lyness_window: k must be >= 1");
    Rng rng(seed, 0x4C59ULL * 64 + std::uint64_t(k), std::uint64_t(index));
    std::vector<Cx> window;
    window.reserve(size_t(k) + 1);
    for (long i = 0; i <= k; ++i) window.push_back(Cx{rng.range(0.5, 2.5), 0.0});
    return window;
}

} // namespace recur
