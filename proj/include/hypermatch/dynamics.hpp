#pragma once

#include <string>
#include <vector>

#include "hypermatch/numeric.hpp"

namespace hypermatch::dynamics {

struct DynParams {
    int k = 3;
    int d = 2;
};

/// g_d(x) = 1 / (1 + (d-1) x^{k-1}); f_d = g_d after g_d.  Exact on [0,1].
Rational g_map(const DynParams& p, const Rational& x);
Rational f_map(const DynParams& p, const Rational& x);

/// Sign of the integer-cleared fixed-point forms; exact, no rounding.
///   phi_alpha(x) = (d-1)x^k + x - 1          (g(x) = x cleared)
///   phi_f(x)     = x A^{k-1} + (d-1)x - A^{k-1},  A = 1+(d-1)x^{k-1}
int phi_alpha_sign(const DynParams& p, const Rational& x);
int phi_f_sign(const DynParams& p, const Rational& x);

struct Enclosure {
    Rational lo, hi;
    int sign_lo = 0, sign_hi = 0;

    Rational width() const { return Rational(hi - lo); }
    Rational mid() const {
        Rational m = (lo + hi) / 2;
        m.canonicalize();
        return m;
    }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Certified enclosure of the unique g-fixed point in (0,1), width <= 2^-prec.
Enclosure alpha_enclosure(const DynParams& p, int prec = 128);

struct FixedPoints {
    Enclosure alpha, beta, gamma;
};

/// Certified enclosures of all three f-fixed points; throws
/// NoThreeFixedPoints when the probe finds no sign change above alpha.
FixedPoints beta_gamma(const DynParams& p, int prec = 128);

bool has_three_fixed_points(const DynParams& p);
int smallest_three_fixed_point_d(int k, int d_max = 100000);

enum class Attractor { to_beta, to_gamma, to_alpha, near_alpha, undetermined };

const char* attractor_name(Attractor a);

struct TrajPoint {
    Rational value; // exact iterate, or the exact value of the float iterate
    bool exact = true;
};

struct Trajectory {
    DynParams params;
    std::vector<TrajPoint> points; // p_0, f(p_0), f(f(p_0)), ...
    int float_switch_index = -1;   // first index computed in 256-bit floats
    Attractor classification = Attractor::undetermined;
    bool converged = false;
};

/// Iterates f_d from p0 until |p_{i+1} - p_i| <= tol or max_iters.  Exact
/// rationals until denominators pass exact_den_bits, then 256-bit floats.
Trajectory iterate_map(const DynParams& p, const Rational& p0, int max_iters,
                       const Rational& tol, std::size_t exact_den_bits = 1u << 16);

struct SignPatternReport {
    int samples_per_interval = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Samples the sign of f_d(x) - x on the four intervals cut out by the
/// enclosures and reports any deviation from the predicted pattern.
SignPatternReport sign_pattern_check(const DynParams& p, int samples, int prec = 96);

struct ScanRow {
    int d = 0;
    bool three = false;
    Enclosure alpha, beta, gamma; // beta/gamma meaningful iff three
};

/// Enclosures for a range of d (OpenMP across rows).
std::vector<ScanRow> scan_fixed_points(int k, int d_min, int d_max, int prec = 96);

/// d, alpha_lo, alpha_hi, beta_lo, beta_hi, gamma_lo, gamma_hi,
/// (1-beta)d^{k-2}, gamma(d+1) per row.
std::string scan_csv(const std::vector<ScanRow>& rows, int k);

} // namespace hypermatch::dynamics
