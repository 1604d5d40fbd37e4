#include "recur/riccati.hpp"

#include <cmath>
#include <stdexcept>

namespace recur {

namespace {

constexpr double kNoPointSinThreshold = 1e-9;

bool near_zero(Cx v, const Tolerances& tol) {
    return approx_eq(v, Cx{0.0, 0.0}, tol);
}

} // namespace

const char* riccati_case_name(RiccatiCase c) {
    switch (c) {
        case RiccatiCase::case1: return "case1";
        case RiccatiCase::case2: return "case2";
        case RiccatiCase::case3: return "case3";
        case RiccatiCase::case4: return "case4";
        case RiccatiCase::case5: return "case5";
        case RiccatiCase::case6: return "case6";
        case RiccatiCase::case7: return "case7";
    }
    return "?";
}

RiccatiClassification classify_riccati(const RiccatiParams& p, const Tolerances& tol) {
    RiccatiClassification c{};
    c.params = p;
    c.tol = tol;

    if (near_zero(p.A, tol) && near_zero(p.B, tol)) {
        c.kind = RiccatiCase::case1;
        return c;
    }
    if (near_zero(p.B, tol)) {
        c.kind = RiccatiCase::case2;
        return c;
    }
    if (near_zero(p.alpha * p.B - p.beta * p.A, tol)) {
        c.kind = RiccatiCase::case3;
        return c;
    }
    if (near_zero(p.beta + p.A, tol)) {
        c.kind = RiccatiCase::case4;
        return c;
    }

    Cx bpa = p.beta + p.A;
    Cx R = (p.beta * p.A - p.alpha * p.B) / (bpa * bpa);
    c.R = R;
    bool real = std::abs(R.imag()) <= tol.abs + tol.rel * std::abs(R);
    if (real && approx_eq(Cx{R.real(), 0.0}, Cx{0.25, 0.0}, tol)) {
        c.kind = RiccatiCase::case6;
        c.R_real = R.real();
        return c;
    }
    if (real && R.real() > 0.25) {
        c.kind = RiccatiCase::case7;
        c.R_real = R.real();
        c.phi = std::acos(0.5 * std::sqrt(1.0 / R.real()));
        return c;
    }
    c.kind = RiccatiCase::case5;
    Cx s = csqrt_principal(Cx{1.0, 0.0} - 4.0 * R);
    c.w_plus = (Cx{1.0, 0.0} + s) / 2.0;
    c.w_minus = (Cx{1.0, 0.0} - s) / 2.0;
    return c;
}

std::optional<Cx> riccati_step(const RiccatiParams& p, Cx x, const Tolerances& tol) {
    Cx num = p.alpha + p.beta * x;
    Cx den = p.A + p.B * x;
    if (std::abs(den) <= tol.singular * std::max(1.0, std::abs(num))) return std::nullopt;
    Cx out = num / den;
    if (!is_finite(out)) return std::nullopt;
    return out;
}

ClosedForm riccati_closed_form(const RiccatiClassification& c, Cx x0, long n) {
    if (n < 0) throw std::invalid_argument("riccati_closed_form: n must be >= 0");
    if (n == 0) return x0;
    const RiccatiParams& p = c.params;
    const Tolerances& tol = c.tol;

    switch (c.kind) {
        case RiccatiCase::case1:
            // 0/0 at the very first step regardless of x0.
            return UndefinedAt{1};

        case RiccatiCase::case2: {
            Cx q = p.beta / p.A;
            Cx a_over_A = p.alpha / p.A;
            if (approx_eq(p.beta, p.A, tol))
                return x0 + double(n) * a_over_A; // q = 1: the geometric sum collapses to n
            Cx qn{1.0, 0.0};
            Cx geo{0.0, 0.0};
            for (long i = 0; i < n; ++i) {
                geo += qn;
                qn *= q;
            }
            return qn * x0 + a_over_A * geo;
        }

        case RiccatiCase::case3: {
            Cx num = p.alpha + p.beta * x0;
            Cx den = p.A + p.B * x0;
            if (std::abs(den) <= tol.singular * std::max(1.0, std::abs(num)))
                return UndefinedAt{1};
            Cx fixed = p.beta / p.B;
            if (n >= 2 && approx_eq(fixed, -p.A / p.B, tol))
                return UndefinedAt{2}; // beta = -A: the constant value is the pole itself
            return fixed;
        }

        case RiccatiCase::case4: {
            Cx num = p.alpha + p.beta * x0;
            Cx den = p.A + p.B * x0;
            if (std::abs(den) <= tol.singular * std::max(1.0, std::abs(num)))
                return UndefinedAt{1};
            if (n % 2 == 0) return x0;
            return num / den;
        }

        case RiccatiCase::case5: {
            Cx bpa = p.beta + p.A;
            Cx u = (p.B * x0 + p.A) / bpa;
            Cx P = u - c.w_minus;
            Cx Q = c.w_plus - u;
            Cx t = c.w_minus / c.w_plus; // |t| < 1 since Re sqrt(1-4R) > 0
            // y_k ~ P*w+^k + Q*w-^k; normalized by w+^k: d_k = P + Q*t^k.
            Cx tk = t;
            double tk_mag = std::abs(t);
            for (long k = 1; k <= n; ++k) {
                Cx dk = P + Q * tk;
                if (std::abs(dk) <= tol.singular * (std::abs(P) + std::abs(Q) * tk_mag))
                    return UndefinedAt{k};
                tk *= t;
                tk_mag *= std::abs(t);
            }
            Cx tn = std::pow(t, double(n));
            Cx value = (bpa / p.B) * (P * c.w_plus + Q * c.w_minus * tn) / (P + Q * tn) - p.A / p.B;
            if (!is_finite(value)) return UndefinedAt{n};
            return value;
        }

        case RiccatiCase::case6: {
            Cx bpa = p.beta + p.A;
            Cx v = (2.0 * (p.B * x0 + p.A)) / bpa;
            Cx vm1 = v - Cx{1.0, 0.0};
            // y_k ~ 1 + (v-1)k up to a constant factor.
            for (long k = 1; k <= n; ++k) {
                Cx dk = Cx{1.0, 0.0} + vm1 * double(k);
                if (std::abs(dk) <= tol.singular * (1.0 + std::abs(vm1) * double(k)))
                    return UndefinedAt{k};
            }
            Cx num = Cx{1.0, 0.0} + vm1 * double(n + 1);
            Cx den = Cx{1.0, 0.0} + vm1 * double(n);
            Cx value = (bpa / (2.0 * p.B)) * (num / den) - p.A / p.B;
            if (!is_finite(value)) return UndefinedAt{n};
            return value;
        }

        case RiccatiCase::case7: {
            Cx bpa = p.beta + p.A;
            Cx u = (p.B * x0 + p.A) / bpa;
            double c1 = std::sqrt(4.0 * c.R_real - 1.0);
            Cx c2 = 2.0 * u - Cx{1.0, 0.0};
            double scale = c1 + std::abs(c2);
            auto T = [&](long k) {
                return c1 * std::cos(double(k) * c.phi) + c2 * std::sin(double(k) * c.phi);
            };
            for (long k = 1; k <= n; ++k) {
                if (std::abs(T(k)) <= tol.singular * scale) return UndefinedAt{k};
            }
            Cx value = (bpa / p.B) * std::sqrt(c.R_real) * (T(n + 1) / T(n)) - p.A / p.B;
            if (!is_finite(value)) return UndefinedAt{n};
            return value;
        }
    }
    throw std::logic_error("riccati_closed_form: unreachable");
}

ForbiddenPoint riccati_forbidden_point(const RiccatiClassification& c, long n) {
    if (n < 1) throw std::invalid_argument("riccati_forbidden_point: n must be >= 1");
    const RiccatiParams& p = c.params;

    switch (c.kind) {
        case RiccatiCase::case1:
            return {ForbiddenPoint::Kind::whole_plane};
        case RiccatiCase::case2:
            return {ForbiddenPoint::Kind::empty_set};
        case RiccatiCase::case3:
        case RiccatiCase::case4:
            // The forbidden set is the single pole; there is no n >= 2 element.
            if (n > 1) return {ForbiddenPoint::Kind::no_point};
            return {ForbiddenPoint::Kind::point, -p.A / p.B};

        case RiccatiCase::case5: {
            // u_n = R (w+^{n-1} - w-^{n-1}) / (w+^n - w-^n), normalized by w+^n.
            Cx t = c.w_minus / c.w_plus;
            Cx tn1 = std::pow(t, double(n - 1));
            Cx u = (c.R / c.w_plus) * (Cx{1.0, 0.0} - tn1) / (Cx{1.0, 0.0} - tn1 * t);
            return {ForbiddenPoint::Kind::point, ((p.beta + p.A) / p.B) * u - p.A / p.B};
        }

        case RiccatiCase::case6: {
            double u = double(n - 1) / double(2 * n);
            return {ForbiddenPoint::Kind::point, ((p.beta + p.A) / p.B) * u - p.A / p.B};
        }

        case RiccatiCase::case7: {
            double s = std::sin(double(n) * c.phi);
            if (std::abs(s) <= kNoPointSinThreshold)
                return {ForbiddenPoint::Kind::no_point};
            double cot = std::cos(double(n) * c.phi) / s;
            Cx u{0.5 * (1.0 - std::sqrt(4.0 * c.R_real - 1.0) * cot), 0.0};
            return {ForbiddenPoint::Kind::point, ((p.beta + p.A) / p.B) * u - p.A / p.B};
        }
    }
    throw std::logic_error("riccati_forbidden_point: unreachable");
}

std::optional<long> riccati_forbidden_contains(const RiccatiClassification& c, Cx x0,
                                               long max_n, const Tolerances& tol) {
    if (max_n < 1) throw std::invalid_argument("riccati_forbidden_contains: max_n must be >= 1");
    switch (c.kind) {
        case RiccatiCase::case1:
            return 1;
        case RiccatiCase::case2:
            return std::nullopt;
        case RiccatiCase::case3:
        case RiccatiCase::case4:
            // The forbidden set is the single pole; any index yields it, report 1.
            if (approx_eq(x0, -c.params.A / c.params.B, tol)) return 1;
            return std::nullopt;
        default:
            break;
    }
    for (long n = 1; n <= max_n; ++n) {
        ForbiddenPoint fp = riccati_forbidden_point(c, n);
        if (fp.kind == ForbiddenPoint::Kind::point && approx_eq(x0, fp.value, tol)) return n;
    }
    return std::nullopt;
}

} // namespace recur
