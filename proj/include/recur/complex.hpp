#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace recur {

using Cx = std::complex<double>;

// Comparison and singularity thresholds shared by every operation that has to
// decide "is this zero" on floating-point data. All fields in [0, 1); zero
// disables the corresponding slack and makes tests exact.
struct Tolerances {
    double rel = 1e-9;       // relative comparison tolerance
    double abs = 1e-12;      // absolute floor
    double singular = 1e-12; // denominator magnitude vs numerator scale
};

bool tolerances_valid(const Tolerances& tol);

// |a-b| <= tol.abs + tol.rel * max(|a|, |b|)
bool approx_eq(Cx a, Cx b, const Tolerances& tol);

bool is_finite(Cx z);

// Principal square root, branch cut on the negative reals, Re >= 0 always.
// On the cut the limit from the upper half-plane is taken, so Im >= 0 when
// Re = 0 (a -0.0 imaginary part does not flip the sign of the result).
Cx csqrt_principal(Cx z);

// Shortest decimal representation that round-trips to the same double.
std::string format_real(double x);

// "re", "imi" or "re+imi" / "re-imi"; a zero imaginary part is dropped, a
// zero real part with nonzero imaginary part prints the imaginary term only.
std::string format_complex(Cx z);

// Grammar: <real> | <real>i | <real>[+|-]<real>i, decimal or scientific.
// Returns nullopt on malformed input; *error names the offending token.
std::optional<Cx> parse_complex(std::string_view text, std::string* error = nullptr);

} // namespace recur
