// Acceptance gate: one pass/fail line per shipping criterion, nonzero exit on
// any failure. Tolerances and budgets are pinned here on purpose; loosening
// them is a release decision, not a test fix.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "recur/oracle.hpp"
#include "recur/riccati.hpp"
#include "recur/sampling.hpp"
#include "recur/second_order.hpp"

using namespace recur;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
int g_index = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* name, bool ok, double elapsed, double budget,
            const std::string& stats) {
    ++g_index;
    bool pass = ok && elapsed < budget;
    if (!pass) ++g_failures;
    std::printf("[%d/7] %s: %s (%s%stime=%.2fs budget=%.0fs)\n", g_index, name,
                pass ? "pass" : "FAIL", stats.c_str(), stats.empty() ? "" : ", ",
                elapsed, budget);
    if (ok && elapsed >= budget)
        std::printf("      exceeded the time budget with correct results\n");
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

// ---- 1: first-order closed forms ---------------------------------------

void criterion_closed_form_first_order() {
    auto start = Clock::now();
    const Tolerances tol{1e-8, 1e-12, 1e-12};
    bool ok = true;
    double worst = 0.0;
    long draws = 0;
    for (int kind = 2; kind <= 7; ++kind) {
        for (long i = 0; i < 200; ++i) {
            RiccatiDraw d = sample_riccati(RiccatiCase(kind - 1), 42, i);
            auto c = classify_riccati(d.params, Tolerances{});
            VerificationReport r = verify_closed_form(c, d.x0, 25, tol);
            worst = std::max(worst, r.max_rel_error);
            if (r.max_rel_error > 1e-8 || r.first_disagreement ||
                r.oracle_singular_at || r.closed_form_singular_at)
                ok = false;
            ++draws;
        }
    }
    report("first-order closed forms track 25-step orbits", ok,
           seconds_since(start), 5.0,
           "draws=" + std::to_string(draws) +
               ", max_rel_error=" + fmt("%.2e", worst));
}

// ---- 2: second-order closed forms, every subcase ------------------------

void criterion_closed_form_second_order() {
    auto start = Clock::now();
    const Tolerances tol{1e-8, 1e-12, 1e-12};
    bool ok = true;
    double worst = 0.0;
    long draws = 0;
    for (EquationId eq : {EquationId::eq4, EquationId::eq5, EquationId::eq6,
                          EquationId::eq7, EquationId::eq8, EquationId::eq9}) {
        for (SoCase sub : so_subcases(eq)) {
            for (long i = 0; i < 200; ++i) {
                SoDraw d = sample_so(eq, sub, 42, i);
                auto c = so_classify(d.instance, d.init, Tolerances{});
                VerificationReport r = verify_closed_form(c, 25, tol);
                worst = std::max(worst, r.max_rel_error);
                if (r.max_rel_error > 1e-8 || r.first_disagreement ||
                    r.oracle_singular_at || r.closed_form_singular_at)
                    ok = false;
                ++draws;
            }
        }
    }
    report("second-order closed forms cover every subcase", ok,
           seconds_since(start), 10.0,
           "draws=" + std::to_string(draws) +
               ", max_rel_error=" + fmt("%.2e", worst));
}

// ---- 3: invariants stay flat along generic orbits ------------------------

void criterion_invariant_drift() {
    auto start = Clock::now();
    bool ok = true;
    double worst = 0.0;
    long draws = 0;
    for (EquationId eq : {EquationId::eq4, EquationId::eq5, EquationId::eq6,
                          EquationId::eq7, EquationId::eq8, EquationId::eq9}) {
        for (long i = 0; i < 500; ++i) {
            SoDraw d = sample_so_generic(eq, 42, i);
            auto I0 = so_invariant(d.instance, d.init.z0, d.init.zm1);
            auto drift = invariant_drift(d.instance, d.init, 40, Tolerances{});
            if (!I0 || !drift) {
                ok = false;
                continue;
            }
            double rel = *drift / std::max(1.0, std::abs(*I0));
            worst = std::max(worst, rel);
            if (rel > 1e-9) ok = false;
            ++draws;
        }
    }
    report("conserved quantities drift below 1e-9 over 40 steps", ok,
           seconds_since(start), 5.0,
           "draws=" + std::to_string(draws) + ", max_drift=" + fmt("%.2e", worst));
}

// ---- 4: forbidden displays die exactly on schedule ------------------------

// Death probes. The singular threshold is calibrated per family: geometric
// families leave true-death denominators around 1e-16..1e-8 while regular
// steps stay above ~1e-4, so 1e-6 separates them. The eq7 geometric family
// instead runs through values of size |C|^m, where the numerator-scaled
// singular test needs the stock 1e-12 threshold so that large-but-healthy
// quotients are not flagged.
const Tolerances kProbe{1e-9, 1e-12, 1e-6};
const Tolerances kProbeEq7{1e-9, 1e-12, 1e-12};

// Displays that sit within double-precision reach of an earlier display
// cannot be steered past the earlier death; a value is verified once, at the
// smallest index that shows it. 1e-4 keeps every survivor far enough from
// its neighbours that rounding amplified along the orbit stays below the
// singular threshold.
const double kShadow = 1e-4;

bool shadow_close(Cx a, Cx b) {
    return std::abs(a - b) <= kShadow * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Returns the step at which the orbit dies, or 0 if it survives max_n steps.
long death_step_riccati(const RiccatiParams& p, Cx x0, long max_n) {
    Cx x = x0;
    for (long s = 1; s <= max_n; ++s) {
        auto nx = riccati_step(p, x, kProbe);
        if (!nx) return s;
        x = *nx;
    }
    return 0;
}

long death_step_so(const SecondOrderInstance& inst, InitialPair init, long max_n,
                   const Tolerances& tol) {
    Cx zm = init.zm1, zn = init.z0;
    for (long s = 1; s <= max_n; ++s) {
        auto nx = so_step(inst, zn, zm, tol);
        if (!nx) return s;
        zm = zn;
        zn = *nx;
    }
    return 0;
}

void criterion_forbidden_deaths() {
    auto start = Clock::now();
    bool ok = true;
    long checked = 0, skipped = 0;
    const long horizon = 15;

    // First-order: every displayed point, up to index 15, on 100 draws per
    // case that has pointwise displays. Display values can repeat or collapse
    // onto each other at higher indices (rotation, geometric accumulation);
    // only the first index carrying a value is probed.
    const Tolerances kFirstOccurrence{1e-5, 1e-5, 1e-12};
    std::map<std::string, long> branch_checked;
    for (int kind = 3; kind <= 7; ++kind) {
        for (long i = 0; i < 100; ++i) {
            RiccatiDraw d = sample_riccati(RiccatiCase(kind - 1), 202, i);
            auto c = classify_riccati(d.params, Tolerances{});
            for (long n = 1; n <= horizon; ++n) {
                ForbiddenPoint fp = riccati_forbidden_point(c, n);
                if (fp.kind != ForbiddenPoint::Kind::point) continue;
                auto first = riccati_forbidden_contains(c, fp.value, horizon,
                                                        kFirstOccurrence);
                if (first && *first < n) {
                    ++skipped;
                    continue;
                }
                if (death_step_riccati(d.params, fp.value, horizon + 1) != n)
                    ok = false;
                ++checked;
                ++branch_checked["case" + std::to_string(kind)];
            }
        }
    }

    // Second-order: every enumerated pair and line crossing with recorded
    // step inside the horizon, 100 draws of B per equation against fixed
    // constant/coordinate grids. A display shadowed by an earlier-dying
    // display (same pair within kShadow, or a matching line coordinate) is
    // skipped: the earlier death is the one its value can reach.
    SamplingPlan plan;
    plan.c_grid = {Cx{6, 0}, Cx{2.5, 0}, Cx{-2, 1}};
    plan.line_grid = {Cx{0.7, 0}, Cx{-1.3, 0.4}};
    for (EquationId eq : {EquationId::eq4, EquationId::eq5, EquationId::eq6,
                          EquationId::eq7, EquationId::eq8, EquationId::eq9}) {
        const Tolerances& probe = eq == EquationId::eq7 ? kProbeEq7 : kProbe;
        const std::string prefix = std::string(equation_name(eq)) + "/";
        for (long i = 0; i < 100; ++i) {
            SecondOrderInstance inst{eq, sample_so_generic(eq, 202, i).instance.B};
            ForbiddenSample s = so_forbidden_sample(inst, horizon, plan);
            auto shadowed = [&](Cx z0, Cx zm1, long n) {
                for (const ForbiddenPoint2D& other : s.points)
                    if (other.n < n && shadow_close(other.z0, z0) &&
                        shadow_close(other.zm1, zm1))
                        return true;
                for (const ForbiddenLine& ln : s.lines) {
                    Cx pinned = ln.fixed == ForbiddenLine::Coord::z0 ? z0 : zm1;
                    if (ln.n < n && shadow_close(ln.value, pinned)) return true;
                }
                return false;
            };
            for (const ForbiddenPoint2D& pt : s.points) {
                if (pt.n > horizon || shadowed(pt.z0, pt.zm1, pt.n)) {
                    ++skipped;
                    continue;
                }
                if (death_step_so(inst, {pt.z0, pt.zm1}, pt.n + 1, probe) != pt.n)
                    ok = false;
                ++checked;
                ++branch_checked[prefix + pt.branch];
            }
            for (const ForbiddenLine& ln : s.lines) {
                for (Cx free : plan.line_grid) {
                    InitialPair init = ln.fixed == ForbiddenLine::Coord::z0
                                           ? InitialPair{ln.value, free}
                                           : InitialPair{free, ln.value};
                    if (shadowed(init.z0, init.zm1, ln.n)) {
                        ++skipped;
                        continue;
                    }
                    if (death_step_so(inst, init, ln.n + 1, probe) != ln.n)
                        ok = false;
                    ++checked;
                    ++branch_checked[prefix + ln.branch];
                }
            }
        }
    }

    // Skipping shadowed tails must never hollow out an enumerated branch.
    for (const char* branch :
         {"case3", "case4", "case5", "case6", "case7", "eq4/seed",
          "eq4/zm1-pole", "eq4/z0-pole", "eq4/reduced", "eq5/seed",
          "eq5/z0-zero", "eq5/zm1-zero", "eq5/reduced", "eq6/axis",
          "eq6/arith", "eq6/geom", "eq7/axis", "eq7/arith", "eq7/geom",
          "eq8/seed", "eq8/reduced", "eq9/seed", "eq9/reduced"})
        if (branch_checked[branch] <= 0) ok = false;

    report("forbidden displays die exactly at their recorded step", ok,
           seconds_since(start), 10.0,
           "points=" + std::to_string(checked) +
               ", shadowed=" + std::to_string(skipped));
}

// ---- 5: exact identities -------------------------------------------------

void criterion_exact_identities() {
    auto start = Clock::now();
    bool ok = true;
    long checked = 0;
    auto expect = [&](bool cond) {
        if (!cond) ok = false;
        ++checked;
    };

    // Fixed points reproduce bitwise under stepping.
    for (EquationId eq : {EquationId::eq4, EquationId::eq7}) {
        SecondOrderInstance inst{eq, {1, 0}};
        Cx zm{1, 0}, zn{1, 0};
        for (int s = 0; s < 10; ++s) {
            auto nx = so_step(inst, zn, zm, Tolerances{});
            expect(nx.has_value() && *nx == Cx{1, 0});
            zm = zn;
            zn = nx.value_or(Cx{});
        }
    }

    // A vanishing conserved quantity pins the orbit to an exact constant.
    for (double b : {1.0, 2.0, 0.5}) {
        for (double s : {5.0, 0.25, -3.0}) {
            SecondOrderInstance e9{EquationId::eq9, {b, 0}};
            Cx zm{0, 0}, zn{s, 0};
            for (int k = 0; k < 6; ++k) {
                auto nx = so_step(e9, zn, zm, Tolerances{});
                expect(nx.has_value() && *nx == Cx{-b, 0});
                zm = zn;
                zn = nx.value_or(Cx{});
            }
            SecondOrderInstance e8{EquationId::eq8, {b, 0}};
            zm = Cx{s, 0};
            zn = Cx{0, 0};
            for (int k = 0; k < 6; ++k) {
                auto nx = so_step(e8, zn, zm, Tolerances{});
                expect(nx.has_value() && *nx == Cx{0, 0});
                zm = zn;
                zn = nx.value_or(Cx{});
            }
        }
    }

    // Proportional numerator: the map lands on an exact constant in one step.
    RiccatiParams prop{{6, 0}, {2, 0}, {3, 0}, {1, 0}};
    for (double x : {5.0, 0.25, -1.5}) {
        auto nx = riccati_step(prop, {x, 0}, Tolerances{});
        expect(nx.has_value() && *nx == Cx{2, 0});
    }
    auto propc = classify_riccati(prop, Tolerances{});
    auto value_is = [&](const ClosedForm& v, Cx want) {
        expect(std::holds_alternative<Cx>(v) && std::get<Cx>(v) == want);
    };
    for (long n = 1; n <= 10; ++n)
        value_is(riccati_closed_form(propc, {0.25, 0}, n), {2, 0});

    // Antiperiodic linear part: even indices return the start bitwise.
    RiccatiParams per2{{2, 0}, {-1, 0}, {1, 0}, {1, 0}};
    auto per2c = classify_riccati(per2, Tolerances{});
    Cx x0{5, 0};
    value_is(riccati_closed_form(per2c, x0, 2), x0);
    value_is(riccati_closed_form(per2c, x0, 6), x0);
    value_is(riccati_closed_form(per2c, x0, 1), {-0.5, 0});
    auto x1 = riccati_step(per2, x0, Tolerances{});
    auto x2 = riccati_step(per2, *x1, Tolerances{});
    expect(x2.has_value() && *x2 == x0);

    report("exact identities hold bitwise", ok, seconds_since(start), 5.0,
           "checks=" + std::to_string(checked));
}

// ---- 6: cyclic window recurrences ----------------------------------------

void criterion_cyclic_windows() {
    auto start = Clock::now();
    bool ok = true;
    double worst_period = 0.0, worst_drift = 0.0;
    for (long k = 1; k <= 3; ++k) {
        for (long i = 0; i < 100; ++i) {
            std::vector<Cx> w = sample_lyness_window(k, 42, i);
            Cx I0 = lyness_invariant(k, {1, 0}, w);
            Trajectory t =
                iterate_orbit(make_lyness_stepper(k, {1, 0}), w, 30, Tolerances{});
            if (!t.completed()) {
                ok = false;
                continue;
            }
            for (size_t j = 0; j + k < t.values.size(); ++j) {
                std::span<const Cx> win{t.values.data() + j, size_t(k) + 1};
                double drift = std::abs(lyness_invariant(k, {1, 0}, win) - I0) /
                               std::max(1.0, std::abs(I0));
                worst_drift = std::max(worst_drift, drift);
                if (drift > 1e-10) ok = false;
            }
            if (k == 1) {
                for (size_t j = 0; j + 5 < t.values.size(); ++j) {
                    double err = std::abs(t.values[j + 5] - t.values[j]) /
                                 std::max(1.0, std::abs(t.values[j]));
                    worst_period = std::max(worst_period, err);
                    if (err > 1e-9) ok = false;
                }
            }
        }
    }
    report("positive windows cycle with period five and flat invariants", ok,
           seconds_since(start), 5.0,
           "max_period_error=" + fmt("%.2e", worst_period) +
               ", max_drift=" + fmt("%.2e", worst_drift));
}

// ---- 7: the CLI is deterministic and text round-trips ---------------------

std::optional<std::string> capture(const std::string& cmd, int& status) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int rc = pclose(pipe);
    status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return out;
}

void criterion_cli_determinism() {
    auto start = Clock::now();
    bool ok = true;
    std::string stats;

    const char* bin = std::getenv("RECUR_CLI");
    if (!bin) {
        report("the CLI self-check is byte-deterministic and text round-trips",
               false, seconds_since(start), 10.0, "RECUR_CLI not set");
        return;
    }
    std::string cmd = std::string(bin) + " verify --seed 42 2>/dev/null";
    int rc1 = -1, rc2 = -1;
    auto run1 = capture(cmd, rc1);
    auto run2 = capture(cmd, rc2);
    bool deterministic =
        run1 && run2 && rc1 == 0 && rc2 == 0 && *run1 == *run2 && !run1->empty();
    if (!deterministic) ok = false;

    // Shortest-form text output must parse back to the identical bits.
    std::mt19937_64 rng(20260815u);
    std::uniform_real_distribution<double> mant(1.0, 2.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    long round_trips = 0;
    auto draw = [&] {
        double v = std::ldexp(mant(rng), expo(rng));
        return (rng() & 1) ? -v : v;
    };
    for (long i = 0; i < 10000; ++i) {
        double v = draw();
        auto back = parse_complex(format_real(v));
        if (!back || back->real() != v || back->imag() != 0.0) ok = false;
        Cx z{draw(), draw()};
        back = parse_complex(format_complex(z));
        if (!back || *back != z) ok = false;
        round_trips += 2;
    }
    stats = "self_check_runs=2, round_trips=" + std::to_string(round_trips);
    report("the CLI self-check is byte-deterministic and text round-trips", ok,
           seconds_since(start), 10.0, stats);
}

} // namespace

int main() {
    criterion_closed_form_first_order();
    criterion_closed_form_second_order();
    criterion_invariant_drift();
    criterion_forbidden_deaths();
    criterion_exact_identities();
    criterion_cyclic_windows();
    criterion_cli_determinism();
    if (g_failures == 0) {
        std::printf("acceptance: all 7 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d of 7 criteria FAILED\n", g_failures);
    return 1;
}
