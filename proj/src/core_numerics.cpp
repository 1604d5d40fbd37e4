#include "recur/complex.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace recur {

bool tolerances_valid(const Tolerances& tol) {
    auto ok = [](double v) { return std::isfinite(v) && v >= 0.0 && v < 1.0; };
    return ok(tol.rel) && ok(tol.abs) && ok(tol.singular);
}

bool approx_eq(Cx a, Cx b, const Tolerances& tol) {
    return std::abs(a - b) <= tol.abs + tol.rel * std::max(std::abs(a), std::abs(b));
}

bool is_finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Cx csqrt_principal(Cx z) {
    if (z.imag() == 0.0) {
        // Covers -0.0 imaginary parts: the cut is approached from above.
        double re = z.real();
        if (re >= 0.0) return {std::sqrt(re), 0.0};
        return {0.0, std::sqrt(-re)};
    }
    return std::sqrt(z);
}

std::string format_real(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    assert(res.ec == std::errc());
    return std::string(buf, res.ptr);
}

std::string format_complex(Cx z) {
    if (z.imag() == 0.0) return format_real(z.real());
    std::string im = format_real(z.imag());
    if (z.real() == 0.0) return im + "i";
    std::string out = format_real(z.real());
    if (z.imag() > 0.0) out += '+';
    out += im;
    out += 'i';
    return out;
}

namespace {

// Parses a signed real starting at text[pos]; advances pos past it.
bool parse_real_at(std::string_view text, size_t& pos, double& out) {
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    // from_chars accepts "inf"/"nan" and its own leading '-'; forbid both so
    // the grammar stays digits-only after the explicit sign above.
    if (pos >= text.size() || !(std::isdigit((unsigned char)text[pos]) || text[pos] == '.'))
        return false;
    double value = 0.0;
    auto res = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (res.ec != std::errc() || !std::isfinite(value)) return false;
    pos = static_cast<size_t>(res.ptr - text.data());
    if (text[start] == '-') value = -value;
    // '+' sign contributes nothing; '-' was applied manually because it was
    // consumed before from_chars saw the digits.
    out = value;
    return true;
}

std::string token_at(std::string_view text, size_t pos) {
    if (pos >= text.size()) return "end of input";
    return "'" + std::string(text.substr(pos)) + "'";
}

} // namespace

std::optional<Cx> parse_complex(std::string_view text, std::string* error) {
    auto fail = [&](const std::string& msg) -> std::optional<Cx> {
        if (error) *error = msg;
        return std::nullopt;
    };
    if (text.empty()) return fail("empty complex literal");

    size_t pos = 0;
    double first = 0.0;
    if (!parse_real_at(text, pos, first))
        return fail("expected a real number at " + token_at(text, pos));

    if (pos == text.size()) return Cx{first, 0.0};

    if (text[pos] == 'i') {
        if (pos + 1 != text.size())
            return fail("trailing characters " + token_at(text, pos + 1) + " after imaginary unit");
        return Cx{0.0, first};
    }

    if (text[pos] != '+' && text[pos] != '-')
        return fail("expected '+', '-' or 'i' at " + token_at(text, pos));

    double second = 0.0;
    if (!parse_real_at(text, pos, second))
        return fail("expected a real number at " + token_at(text, pos));

    if (pos == text.size() || text[pos] != 'i')
        return fail("expected 'i' at " + token_at(text, pos));
    if (pos + 1 != text.size())
        return fail("trailing characters " + token_at(text, pos + 1) + " after imaginary unit");
    return Cx{first, second};
}

} // namespace recur
