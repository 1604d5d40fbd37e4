#include "recur.h"

#include <cstring>
#include <new>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recur/complex.hpp"
#include "recur/oracle.hpp"
#include "recur/riccati.hpp"
#include "recur/sampling.hpp"
#include "recur/second_order.hpp"

struct recur_riccati {
    recur::RiccatiClassification c;
};
struct recur_so {
    recur::SecondOrderClassification c;
};
struct recur_points {
    recur::ForbiddenSample s;
};

namespace {

using recur::Cx;

Cx to_cx(recur_complex v) { return {v.re, v.im}; }
recur_complex from_cx(Cx v) { return {v.real(), v.imag()}; }

bool tol_of(const recur_tolerances* tol, recur::Tolerances& out) {
    if (tol) out = {tol->rel, tol->abs, tol->singular};
    return recur::tolerances_valid(out);
}

bool eq_of(int eq, recur::EquationId& out) {
    if (eq < RECUR_EQ4 || eq > RECUR_EQ9) return false;
    out = recur::EquationId(eq - RECUR_EQ4);
    return true;
}

bool case_of(int riccati_case, recur::RiccatiCase& out) {
    if (riccati_case < 1 || riccati_case > 7) return false;
    out = recur::RiccatiCase(riccati_case - 1);
    return true;
}

bool subcase_of(recur::EquationId eq, const char* name, recur::SoCase& out) {
    if (!name) return false;
    for (recur::SoCase sc : recur::so_subcases(eq)) {
        if (std::strcmp(recur::so_case_name(sc), name) == 0) {
            out = sc;
            return true;
        }
    }
    return false;
}

/* Exceptions from the core map onto status codes; anything unexpected is
 * reported rather than allowed to cross the C boundary. */
template <class F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const recur::EmptyGridError&) {
        return RECUR_ERR_EMPTY_GRID;
    } catch (const std::invalid_argument&) {
        return RECUR_ERR_INVALID;
    } catch (const std::domain_error&) {
        return RECUR_ERR_DOMAIN;
    } catch (const std::bad_alloc&) {
        return RECUR_ERR_INTERNAL;
    } catch (...) {
        return RECUR_ERR_INTERNAL;
    }
}

int copy_out(const std::string& s, char* buf, size_t cap, size_t* len) {
    if (len) *len = s.size();
    if (!buf) return cap == 0 ? RECUR_ERR_BUFFER : RECUR_ERR_INVALID;
    if (cap < s.size() + 1) return RECUR_ERR_BUFFER;
    std::memcpy(buf, s.data(), s.size() + 1);
    return RECUR_OK;
}

void fill_report(const recur::VerificationReport& r, recur_report* out) {
    out->max_rel_error = r.max_rel_error;
    out->first_disagreement = r.first_disagreement.value_or(-1);
    out->oracle_singular_at = r.oracle_singular_at.value_or(-1);
    out->closed_form_singular_at = r.closed_form_singular_at.value_or(-1);
}

} // namespace

extern "C" {

const char* recur_version(void) { return "1.0.0"; }

const char* recur_status_message(int status) {
    switch (status) {
        case RECUR_OK: return "ok";
        case RECUR_NOT_FOUND: return "not found";
        case RECUR_SINGULAR: return "singular step";
        case RECUR_UNDEFINED: return "undefined";
        case RECUR_ERR_INVALID: return "invalid argument";
        case RECUR_ERR_DOMAIN: return "input outside domain";
        case RECUR_ERR_PARSE: return "parse error";
        case RECUR_ERR_EMPTY_GRID: return "empty sampling grid";
        case RECUR_ERR_BUFFER: return "buffer too small";
        case RECUR_ERR_INTERNAL: return "internal error";
        default: return "unknown status";
    }
}

int recur_parse_complex(const char* text, recur_complex* out) {
    if (!text || !out) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto v = recur::parse_complex(text);
        if (!v) return RECUR_ERR_PARSE;
        *out = from_cx(*v);
        return RECUR_OK;
    });
}

int recur_format_real(double value, char* buf, size_t cap, size_t* len) {
    return guarded([&] { return copy_out(recur::format_real(value), buf, cap, len); });
}

int recur_format_complex(recur_complex value, char* buf, size_t cap, size_t* len) {
    return guarded(
        [&] { return copy_out(recur::format_complex(to_cx(value)), buf, cap, len); });
}

/* ---- first-order rational maps --------------------------------------- */

int recur_riccati_classify(const recur_riccati_params* params,
                           const recur_tolerances* tol, recur_riccati_t** out) {
    if (!out) return RECUR_ERR_INVALID;
    *out = nullptr;
    if (!params) return RECUR_ERR_INVALID;
    recur::Tolerances t{};
    if (!tol_of(tol, t)) return RECUR_ERR_INVALID;
    recur::RiccatiParams p{to_cx(params->alpha), to_cx(params->beta),
                           to_cx(params->A), to_cx(params->B)};
    if (!recur::is_finite(p.alpha) || !recur::is_finite(p.beta) ||
        !recur::is_finite(p.A) || !recur::is_finite(p.B))
        return RECUR_ERR_INVALID;
    return guarded([&] {
        *out = new recur_riccati{recur::classify_riccati(p, t)};
        return RECUR_OK;
    });
}

void recur_riccati_free(recur_riccati_t* handle) { delete handle; }

int recur_riccati_case(const recur_riccati_t* handle) {
    return handle ? int(handle->c.kind) + 1 : 0;
}

const char* recur_riccati_case_name_of(const recur_riccati_t* handle) {
    return handle ? recur::riccati_case_name(handle->c.kind) : nullptr;
}

int recur_riccati_constants(const recur_riccati_t* handle, recur_complex* R,
                            recur_complex* w_minus, recur_complex* w_plus,
                            double* R_real, double* phi) {
    if (!handle) return RECUR_ERR_INVALID;
    if (R) *R = from_cx(handle->c.R);
    if (w_minus) *w_minus = from_cx(handle->c.w_minus);
    if (w_plus) *w_plus = from_cx(handle->c.w_plus);
    if (R_real) *R_real = handle->c.R_real;
    if (phi) *phi = handle->c.phi;
    return RECUR_OK;
}

int recur_riccati_step(const recur_riccati_t* handle, recur_complex x,
                       recur_complex* out) {
    if (!handle || !out) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto nx = recur::riccati_step(handle->c.params, to_cx(x), handle->c.tol);
        if (!nx) return RECUR_SINGULAR;
        *out = from_cx(*nx);
        return RECUR_OK;
    });
}

int recur_riccati_closed_form(const recur_riccati_t* handle, recur_complex x0,
                              long n, recur_complex* out, long* undefined_at) {
    if (!handle || !out) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto v = recur::riccati_closed_form(handle->c, to_cx(x0), n);
        if (auto* u = std::get_if<recur::UndefinedAt>(&v)) {
            if (undefined_at) *undefined_at = u->step;
            return RECUR_UNDEFINED;
        }
        *out = from_cx(std::get<Cx>(v));
        return RECUR_OK;
    });
}

int recur_riccati_forbidden_point(const recur_riccati_t* handle, long n,
                                  int* kind, recur_complex* value) {
    if (!handle || !kind) return RECUR_ERR_INVALID;
    return guarded([&] {
        recur::ForbiddenPoint fp = recur::riccati_forbidden_point(handle->c, n);
        switch (fp.kind) {
            case recur::ForbiddenPoint::Kind::point: *kind = RECUR_FORBIDDEN_POINT; break;
            case recur::ForbiddenPoint::Kind::whole_plane:
                *kind = RECUR_FORBIDDEN_WHOLE_PLANE;
                break;
            case recur::ForbiddenPoint::Kind::empty_set:
                *kind = RECUR_FORBIDDEN_EMPTY_SET;
                break;
            case recur::ForbiddenPoint::Kind::no_point:
                *kind = RECUR_FORBIDDEN_NO_POINT;
                break;
        }
        if (value) *value = from_cx(fp.value);
        return RECUR_OK;
    });
}

int recur_riccati_forbidden_contains(const recur_riccati_t* handle,
                                     recur_complex x0, long max_n, long* n_out) {
    if (!handle) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto n = recur::riccati_forbidden_contains(handle->c, to_cx(x0), max_n,
                                                   handle->c.tol);
        if (!n) return RECUR_NOT_FOUND;
        if (n_out) *n_out = *n;
        return RECUR_OK;
    });
}

int recur_verify_riccati(const recur_riccati_t* handle, recur_complex x0,
                         long n_max, const recur_tolerances* tol,
                         recur_report* out) {
    if (!handle || !out) return RECUR_ERR_INVALID;
    recur::Tolerances t{};
    if (!tol_of(tol, t)) return RECUR_ERR_INVALID;
    return guarded([&] {
        fill_report(recur::verify_closed_form(handle->c, to_cx(x0), n_max, t), out);
        return RECUR_OK;
    });
}

/* ---- second-order families ------------------------------------------- */

int recur_parse_equation(const char* name) {
    if (!name) return -1;
    auto eq = recur::parse_equation(name);
    return eq ? int(*eq) + RECUR_EQ4 : -1;
}

const char* recur_equation_name_of(int eq) {
    recur::EquationId id;
    return eq_of(eq, id) ? recur::equation_name(id) : nullptr;
}

int recur_so_subcase_count(int eq) {
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    return int(recur::so_subcases(id).size());
}

const char* recur_so_subcase_at(int eq, int i) {
    recur::EquationId id;
    if (!eq_of(eq, id)) return nullptr;
    auto list = recur::so_subcases(id);
    if (i < 0 || size_t(i) >= list.size()) return nullptr;
    return recur::so_case_name(list[size_t(i)]);
}

int recur_so_classify(int eq, recur_complex B, recur_complex z0,
                      recur_complex zm1, const recur_tolerances* tol,
                      recur_so_t** out) {
    if (!out) return RECUR_ERR_INVALID;
    *out = nullptr;
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    recur::Tolerances t{};
    if (!tol_of(tol, t)) return RECUR_ERR_INVALID;
    return guarded([&] {
        recur::SecondOrderInstance inst{id, to_cx(B)};
        recur::InitialPair init{to_cx(z0), to_cx(zm1)};
        *out = new recur_so{recur::so_classify(inst, init, t)};
        return RECUR_OK;
    });
}

void recur_so_free(recur_so_t* handle) { delete handle; }

const char* recur_so_subcase(const recur_so_t* handle) {
    return handle ? recur::so_case_name(handle->c.subcase) : nullptr;
}

int recur_so_constants(const recur_so_t* handle, recur_complex* C,
                       recur_complex* lambda1, recur_complex* lambda2,
                       recur_complex* M1, recur_complex* M2, recur_complex* w0,
                       recur_complex* D, double* rho) {
    if (!handle) return RECUR_ERR_INVALID;
    if (C) *C = from_cx(handle->c.C);
    if (lambda1) *lambda1 = from_cx(handle->c.lambda1);
    if (lambda2) *lambda2 = from_cx(handle->c.lambda2);
    if (M1) *M1 = from_cx(handle->c.M1);
    if (M2) *M2 = from_cx(handle->c.M2);
    if (w0) *w0 = from_cx(handle->c.w0);
    if (D) *D = from_cx(handle->c.D);
    if (rho) *rho = handle->c.rho;
    return RECUR_OK;
}

int recur_so_step_eval(int eq, recur_complex B, recur_complex zn,
                       recur_complex znm1, const recur_tolerances* tol,
                       recur_complex* out) {
    if (!out) return RECUR_ERR_INVALID;
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    recur::Tolerances t{};
    if (!tol_of(tol, t)) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto nx = recur::so_step({id, to_cx(B)}, to_cx(zn), to_cx(znm1), t);
        if (!nx) return RECUR_SINGULAR;
        *out = from_cx(*nx);
        return RECUR_OK;
    });
}

int recur_so_closed_form(const recur_so_t* handle, long n, recur_complex* out,
                         long* undefined_at) {
    if (!handle || !out) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto v = recur::so_closed_form(handle->c, n);
        if (auto* u = std::get_if<recur::UndefinedAt>(&v)) {
            if (undefined_at) *undefined_at = u->step;
            return RECUR_UNDEFINED;
        }
        *out = from_cx(std::get<Cx>(v));
        return RECUR_OK;
    });
}

int recur_so_invariant(int eq, recur_complex B, recur_complex zn,
                       recur_complex znm1, recur_complex* out) {
    if (!out) return RECUR_ERR_INVALID;
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto v = recur::so_invariant({id, to_cx(B)}, to_cx(zn), to_cx(znm1));
        if (!v) return RECUR_UNDEFINED;
        *out = from_cx(*v);
        return RECUR_OK;
    });
}

int recur_so_invariant_drift(int eq, recur_complex B, recur_complex z0,
                             recur_complex zm1, long n_max,
                             const recur_tolerances* tol, double* drift) {
    if (!drift) return RECUR_ERR_INVALID;
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    recur::Tolerances t{};
    if (!tol_of(tol, t)) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto d = recur::invariant_drift({id, to_cx(B)}, {to_cx(z0), to_cx(zm1)},
                                        n_max, t);
        if (!d) return RECUR_UNDEFINED;
        *drift = *d;
        return RECUR_OK;
    });
}

int recur_so_forbidden_contains(int eq, recur_complex B, recur_complex z0,
                                recur_complex zm1, long max_n,
                                const recur_tolerances* tol,
                                const char** branch, long* n_out) {
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    recur::Tolerances t{};
    if (!tol_of(tol, t)) return RECUR_ERR_INVALID;
    return guarded([&] {
        auto m = recur::so_forbidden_contains({id, to_cx(B)},
                                              {to_cx(z0), to_cx(zm1)}, max_n, t);
        if (!m) return RECUR_NOT_FOUND;
        if (branch) *branch = m->branch;
        if (n_out) *n_out = m->n;
        return RECUR_OK;
    });
}

int recur_so_forbidden_sample(int eq, recur_complex B, long n_max,
                              const recur_complex* c_grid, size_t c_len,
                              const recur_complex* line_grid, size_t line_len,
                              recur_points_t** out) {
    if (!out) return RECUR_ERR_INVALID;
    *out = nullptr;
    if ((c_len && !c_grid) || (line_len && !line_grid)) return RECUR_ERR_INVALID;
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    return guarded([&] {
        recur::SamplingPlan plan;
        plan.c_grid.reserve(c_len);
        for (size_t i = 0; i < c_len; ++i) plan.c_grid.push_back(to_cx(c_grid[i]));
        plan.line_grid.reserve(line_len);
        for (size_t i = 0; i < line_len; ++i)
            plan.line_grid.push_back(to_cx(line_grid[i]));
        *out = new recur_points{
            recur::so_forbidden_sample({id, to_cx(B)}, n_max, plan)};
        return RECUR_OK;
    });
}

void recur_points_free(recur_points_t* handle) { delete handle; }

size_t recur_points_count(const recur_points_t* handle) {
    return handle ? handle->s.points.size() : 0;
}

int recur_points_get(const recur_points_t* handle, size_t i,
                     recur_forbidden_point2d* out) {
    if (!handle || !out || i >= handle->s.points.size()) return RECUR_ERR_INVALID;
    const recur::ForbiddenPoint2D& p = handle->s.points[i];
    out->z0 = from_cx(p.z0);
    out->zm1 = from_cx(p.zm1);
    out->branch = p.branch;
    out->n = p.n;
    return RECUR_OK;
}

size_t recur_lines_count(const recur_points_t* handle) {
    return handle ? handle->s.lines.size() : 0;
}

int recur_lines_get(const recur_points_t* handle, size_t i,
                    recur_forbidden_line* out) {
    if (!handle || !out || i >= handle->s.lines.size()) return RECUR_ERR_INVALID;
    const recur::ForbiddenLine& l = handle->s.lines[i];
    out->fixed_coord = l.fixed == recur::ForbiddenLine::Coord::z0 ? 0 : 1;
    out->value = from_cx(l.value);
    out->branch = l.branch;
    out->n = l.n;
    return RECUR_OK;
}

int recur_verify_so(const recur_so_t* handle, long n_max,
                    const recur_tolerances* tol, recur_report* out) {
    if (!handle || !out) return RECUR_ERR_INVALID;
    recur::Tolerances t{};
    if (!tol_of(tol, t)) return RECUR_ERR_INVALID;
    return guarded([&] {
        fill_report(recur::verify_closed_form(handle->c, n_max, t), out);
        return RECUR_OK;
    });
}

/* ---- Lyness maps ------------------------------------------------------ */

int recur_lyness_step(long k, recur_complex alpha, const recur_complex* window,
                      size_t len, const recur_tolerances* tol,
                      recur_complex* out) {
    if (!out || !window || k < 1 || len != size_t(k) + 1) return RECUR_ERR_INVALID;
    recur::Tolerances t{};
    if (!tol_of(tol, t)) return RECUR_ERR_INVALID;
    return guarded([&] {
        std::vector<Cx> w(len);
        for (size_t i = 0; i < len; ++i) w[i] = to_cx(window[i]);
        auto stepper = recur::make_lyness_stepper(k, to_cx(alpha));
        auto nx = stepper(std::span<const Cx>(w), t);
        if (!nx) return RECUR_SINGULAR;
        *out = from_cx(*nx);
        return RECUR_OK;
    });
}

int recur_lyness_invariant(long k, recur_complex alpha,
                           const recur_complex* window, size_t len,
                           recur_complex* out) {
    if (!out || !window) return RECUR_ERR_INVALID;
    return guarded([&] {
        std::vector<Cx> w(len);
        for (size_t i = 0; i < len; ++i) w[i] = to_cx(window[i]);
        *out = from_cx(recur::lyness_invariant(k, to_cx(alpha), w));
        return RECUR_OK;
    });
}

/* ---- seeded samplers --------------------------------------------------- */

int recur_sample_riccati(int riccati_case, uint64_t seed, long index,
                         recur_riccati_params* params, recur_complex* x0) {
    if (!params || !x0) return RECUR_ERR_INVALID;
    recur::RiccatiCase kind;
    if (!case_of(riccati_case, kind)) return RECUR_ERR_INVALID;
    return guarded([&] {
        recur::RiccatiDraw d = recur::sample_riccati(kind, seed, index);
        params->alpha = from_cx(d.params.alpha);
        params->beta = from_cx(d.params.beta);
        params->A = from_cx(d.params.A);
        params->B = from_cx(d.params.B);
        *x0 = from_cx(d.x0);
        return RECUR_OK;
    });
}

int recur_sample_so(int eq, const char* subcase, uint64_t seed, long index,
                    recur_complex* B, recur_complex* z0, recur_complex* zm1) {
    if (!B || !z0 || !zm1) return RECUR_ERR_INVALID;
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    recur::SoCase sc;
    if (!subcase_of(id, subcase, sc)) return RECUR_ERR_INVALID;
    return guarded([&] {
        recur::SoDraw d = recur::sample_so(id, sc, seed, index);
        *B = from_cx(d.instance.B);
        *z0 = from_cx(d.init.z0);
        *zm1 = from_cx(d.init.zm1);
        return RECUR_OK;
    });
}

int recur_sample_so_generic(int eq, uint64_t seed, long index, recur_complex* B,
                            recur_complex* z0, recur_complex* zm1) {
    if (!B || !z0 || !zm1) return RECUR_ERR_INVALID;
    recur::EquationId id;
    if (!eq_of(eq, id)) return RECUR_ERR_INVALID;
    return guarded([&] {
        recur::SoDraw d = recur::sample_so_generic(id, seed, index);
        *B = from_cx(d.instance.B);
        *z0 = from_cx(d.init.z0);
        *zm1 = from_cx(d.init.zm1);
        return RECUR_OK;
    });
}

int recur_sample_lyness(long k, uint64_t seed, long index, double* out,
                        size_t cap, size_t* len) {
    if (k < 1) return RECUR_ERR_INVALID;
    if (len) *len = size_t(k) + 1;
    if (!out) return RECUR_ERR_INVALID;
    if (cap < size_t(k) + 1) return RECUR_ERR_BUFFER;
    return guarded([&] {
        std::vector<Cx> w = recur::sample_lyness_window(k, seed, index);
        for (size_t i = 0; i < w.size(); ++i) out[i] = w[i].real();
        return RECUR_OK;
    });
}

} /* extern "C" */
