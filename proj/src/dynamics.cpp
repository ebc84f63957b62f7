#include "hypermatch/dynamics.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <omp.h>

namespace hypermatch::dynamics {

namespace {

void check_params(const DynParams& p, bool need_k3) {
    if (p.k < 2 || (need_k3 && p.k < 3))
        fail(errc::domain_error, "k must be " + std::string(need_k3 ? "> 2" : ">= 2") +
                                     ", got " + std::to_string(p.k));
    if (p.d < 2)
        fail(errc::domain_error, "d must be >= 2, got " + std::to_string(p.d));
}

void check_unit_interval(const Rational& x) {
    if (x < 0 || x > 1)
        fail(errc::domain_error, "argument " + rat_str(x) + " outside [0,1]");
}

int sign_of(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

} // namespace

Rational g_map(const DynParams& p, const Rational& x) {
    check_params(p, false);
    check_unit_interval(x);
    Rational denom = 1 + (p.d - 1) * rat_pow(x, p.k - 1);
    Rational r(1);
    r /= denom;
    return r;
}

Rational f_map(const DynParams& p, const Rational& x) { return g_map(p, g_map(p, x)); }

int phi_alpha_sign(const DynParams& p, const Rational& x) {
    const BigInt& a = x.get_num();
    const BigInt& b = x.get_den();
    BigInt val = (p.d - 1) * int_pow(a, p.k) + a * int_pow(b, p.k - 1) - int_pow(b, p.k);
    return sign_of(val);
}

int phi_f_sign(const DynParams& p, const Rational& x) {
    const BigInt& a = x.get_num();
    const BigInt& b = x.get_den();
    unsigned long km1 = p.k - 1;
    BigInt an = int_pow(b, km1) + (p.d - 1) * int_pow(a, km1); // A = an / b^{k-1}
    BigInt an_pow = int_pow(an, km1);
    BigInt val = (a - b) * an_pow + (p.d - 1) * a * int_pow(b, km1 * km1);
    return sign_of(val);
}

namespace {

template <class SignFn>
Enclosure bisect(SignFn&& sign, Rational lo, Rational hi, int prec) {
    Enclosure e;
    int slo = sign(lo), shi = sign(hi);
    if (slo == 0 || shi == 0 || slo == shi)
        fail(errc::internal_error, "bisection endpoints do not bracket a root");
    Rational target(BigInt(1), int_pow(BigInt(2), prec));
    while (Rational(hi - lo) > target) {
        Rational mid = (lo + hi) / 2;
        mid.canonicalize();
        int sm = sign(mid);
        if (sm == 0) {
            // exact rational root: shrink symmetrically around it
            Rational eps = target / 4;
            lo = mid - eps;
            hi = mid + eps;
            slo = sign(lo);
            shi = sign(hi);
            break;
        }
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    e.lo = lo;
    e.hi = hi;
    e.sign_lo = slo;
    e.sign_hi = shi;
    return e;
}

} // namespace

Enclosure alpha_enclosure(const DynParams& p, int prec) {
    check_params(p, false);
    return bisect([&](const Rational& x) { return phi_alpha_sign(p, x); }, Rational(0),
                  Rational(1), prec);
}

namespace {

/// A point w in (alpha_hi, 1) with phi_f(w) < 0, if the probe grid finds one.
/// Probes a uniform grid plus dyadic approaches to 1 (beta crowds toward 1
/// for large d).
std::optional<Rational> probe_witness(const DynParams& p, const Rational& alpha_hi) {
    const int grid = 64;
    std::vector<Rational> probes;
    Rational span = 1 - alpha_hi;
    for (int j = 1; j < grid; ++j) {
        Rational frac(j, grid);
        frac.canonicalize();
        Rational x = alpha_hi + span * frac;
        probes.push_back(x);
    }
    Rational step = span;
    for (int j = 1; j < 60; ++j) {
        step /= 2;
        Rational x = 1 - step;
        x.canonicalize();
        probes.push_back(x);
    }
    for (const Rational& x : probes)
        if (x > alpha_hi && x < 1 && phi_f_sign(p, x) < 0)
            return x;
    return std::nullopt;
}

} // namespace

bool has_three_fixed_points(const DynParams& p) {
    check_params(p, true);
    Enclosure a = alpha_enclosure(p, 60);
    return probe_witness(p, a.hi).has_value();
}

FixedPoints beta_gamma(const DynParams& p, int prec) {
    check_params(p, true);
    FixedPoints fp;
    fp.alpha = alpha_enclosure(p, prec + 16);

    auto witness = probe_witness(p, fp.alpha.hi);
    if (!witness)
        fail(errc::no_three_fixed_points,
             "no sign change of the f fixed-point form above alpha for d=" +
                 std::to_string(p.d) + ", k=" + std::to_string(p.k));

    auto fsign = [&](const Rational& x) { return phi_f_sign(p, x); };
    fp.beta = bisect(fsign, *witness, Rational(1), prec);

    // gamma < alpha: refine alpha until its lower bound lands right of gamma
    Rational left_end = fp.alpha.lo;
    int extra = prec + 16;
    while (phi_f_sign(p, left_end) <= 0) {
        extra += 32;
        if (extra > prec + 512)
            fail(errc::internal_error, "cannot separate gamma from alpha");
        left_end = alpha_enclosure(p, extra).lo;
    }
    fp.gamma = bisect(fsign, Rational(0), left_end, prec);

    if (!(fp.gamma.hi < fp.alpha.lo && fp.alpha.hi < fp.beta.lo))
        fail(errc::internal_error, "enclosures fail gamma < alpha < beta");

    // gamma = g(beta): the g-image of the beta enclosure must meet gamma's
    Rational img_lo = g_map(p, fp.beta.hi);
    Rational img_hi = g_map(p, fp.beta.lo);
    if (img_hi < fp.gamma.lo || fp.gamma.hi < img_lo)
        fail(errc::internal_error, "g(beta enclosure) misses gamma enclosure");

    return fp;
}

int smallest_three_fixed_point_d(int k, int d_max) {
    for (int d = 2; d <= d_max; ++d) {
        DynParams p{k, d};
        if (has_three_fixed_points(p))
            return d;
    }
    fail(errc::no_three_fixed_points,
         "no d <= " + std::to_string(d_max) + " shows three fixed points for k=" +
             std::to_string(k));
}

const char* attractor_name(Attractor a) {
    switch (a) {
    case Attractor::to_beta: return "converging-to-beta";
    case Attractor::to_gamma: return "converging-to-gamma";
    case Attractor::to_alpha: return "converging-to-alpha";
    case Attractor::near_alpha: return "undetermined-near-alpha";
    case Attractor::undetermined: return "undetermined";
    }
    return "undetermined";
}

namespace {

class BigFloat {
public:
    static constexpr int precision_bits = 256;

    BigFloat() : v_(0, precision_bits) {}
    explicit BigFloat(const Rational& q) : v_(0, precision_bits) {
        mpf_set_q(v_.get_mpf_t(), q.get_mpq_t());
    }

    Rational to_rational() const {
        Rational q;
        mpq_set_f(q.get_mpq_t(), v_.get_mpf_t());
        q.canonicalize();
        return q;
    }

    static BigFloat f_map(const DynParams& p, const BigFloat& x) {
        BigFloat gx = g_apply(p, x);
        return g_apply(p, gx);
    }

    static BigFloat g_apply(const DynParams& p, const BigFloat& x) {
        BigFloat r;
        mpf_class pow(1, precision_bits);
        for (int i = 0; i < p.k - 1; ++i)
            pow *= x.v_;
        r.v_ = 1 / (1 + (p.d - 1) * pow);
        return r;
    }

    mpf_class v_;
};

} // namespace

Trajectory iterate_map(const DynParams& p, const Rational& p0, int max_iters,
                       const Rational& tol, std::size_t exact_den_bits) {
    check_params(p, false);
    check_unit_interval(p0);
    if (tol < 0)
        fail(errc::domain_error, "tolerance must be >= 0");

    Trajectory t;
    t.params = p;
    t.points.push_back({p0, true});

    bool exact = true;
    Rational cur = p0;
    BigFloat fcur;
    for (int i = 0; i < max_iters; ++i) {
        Rational next_val;
        if (exact) {
            Rational next = f_map(p, cur);
            if (rat_den_bits(next) > exact_den_bits) {
                t.float_switch_index = static_cast<int>(t.points.size());
                exact = false;
                fcur = BigFloat(cur);
            } else {
                next_val = next;
                cur = std::move(next);
            }
        }
        if (!exact) {
            fcur = BigFloat::f_map(p, fcur);
            next_val = fcur.to_rational();
        }
        t.points.push_back({next_val, exact});
        const Rational& prev = t.points[t.points.size() - 2].value;
        Rational delta = next_val - prev;
        if (delta < 0)
            delta = -delta;
        if (delta <= tol) {
            t.converged = true;
            break;
        }
    }

    // classification against certified enclosures
    Enclosure alpha = alpha_enclosure(p, 96);
    if (alpha.contains(p0)) {
        t.classification = Attractor::near_alpha;
    } else if (p.k >= 3 && has_three_fixed_points(p)) {
        t.classification = p0 > alpha.hi ? Attractor::to_beta : Attractor::to_gamma;
    } else {
        t.classification = Attractor::to_alpha;
    }
    return t;
}

SignPatternReport sign_pattern_check(const DynParams& p, int samples, int prec) {
    if (samples <= 0)
        fail(errc::domain_error, "samples must be positive");
    FixedPoints fp = beta_gamma(p, prec); // throws NoThreeFixedPoints if absent

    SignPatternReport rep;
    rep.samples_per_interval = samples;

    struct Interval {
        Rational lo, hi;
        int expected; // sign of phi_f = -(sign of f(x) - x)
        const char* name;
    };
    std::vector<Interval> ivs = {
        {Rational(0), fp.gamma.lo, -1, "[0,gamma)"},
        {fp.gamma.hi, fp.alpha.lo, +1, "(gamma,alpha)"},
        {fp.alpha.hi, fp.beta.lo, -1, "(alpha,beta)"},
        {fp.beta.hi, Rational(1), +1, "(beta,1]"},
    };
    for (const auto& iv : ivs) {
        for (int j = 1; j <= samples; ++j) {
            Rational frac(j, samples + 1);
            frac.canonicalize();
            Rational x = iv.lo + (iv.hi - iv.lo) * frac;
            int s = phi_f_sign(p, x);
            if (s != iv.expected) {
                std::ostringstream os;
                os << "sign " << s << " at " << rat_str(x) << " in " << iv.name
                   << ", expected " << iv.expected;
                rep.violations.push_back(os.str());
            }
        }
    }
    return rep;
}

std::vector<ScanRow> scan_fixed_points(int k, int d_min, int d_max, int prec) {
    if (d_min < 2 || d_max < d_min)
        fail(errc::domain_error, "need 2 <= d_min <= d_max");
    std::vector<ScanRow> rows(d_max - d_min + 1);
#pragma omp parallel for schedule(dynamic)
    for (int d = d_min; d <= d_max; ++d) {
        ScanRow row;
        row.d = d;
        DynParams p{k, d};
        row.alpha = alpha_enclosure(p, prec);
        try {
            FixedPoints fp = beta_gamma(p, prec);
            row.three = true;
            row.beta = fp.beta;
            row.gamma = fp.gamma;
        } catch (const Error& e) {
            if (e.code() != errc::no_three_fixed_points)
                throw;
        }
        rows[d - d_min] = std::move(row);
    }
    return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows, int k) {
    std::ostringstream os;
    os << "d,alpha_lo,alpha_hi,beta_lo,beta_hi,gamma_lo,gamma_hi,"
          "one_minus_beta_times_d_pow_km2,gamma_times_d_plus_1\n";
    for (const ScanRow& r : rows) {
        os << r.d << ',' << rat_decimal(r.alpha.lo, 30) << ',' << rat_decimal(r.alpha.hi, 30);
        if (r.three) {
            Rational mb = r.beta.mid(), mg = r.gamma.mid();
            Rational metric_beta = (1 - mb) * int_pow(BigInt(r.d), k - 2);
            Rational metric_gamma = mg * (r.d + 1);
            os << ',' << rat_decimal(r.beta.lo, 30) << ',' << rat_decimal(r.beta.hi, 30) << ','
               << rat_decimal(r.gamma.lo, 30) << ',' << rat_decimal(r.gamma.hi, 30) << ','
               << rat_decimal(metric_beta, 20) << ',' << rat_decimal(metric_gamma, 20);
        } else {
            os << ",,,,,,";
        }
        os << '\n';
    }
    return os.str();
}

} // namespace hypermatch::dynamics
