#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "hypermatch/errors.hpp"

namespace hypermatch {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Counts-by-size sequence; entry i = number of objects of size i.
using SizePoly = std::vector<BigInt>;

inline SizePoly poly_conv(const SizePoly& a, const SizePoly& b) {
    if (a.empty() || b.empty())
        return {};
    SizePoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0)
                out[i + j] += a[i] * b[j];
    }
    return out;
}

inline void poly_add(SizePoly& into, const SizePoly& other, std::size_t shift = 0) {
    if (into.size() < other.size() + shift)
        into.resize(other.size() + shift);
    for (std::size_t i = 0; i < other.size(); ++i)
        into[i + shift] += other[i];
}

inline BigInt poly_total(const SizePoly& p) {
    BigInt t = 0;
    for (const BigInt& c : p)
        t += c;
    return t;
}

inline BigInt int_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "3/4", "1", or a plain decimal like "0.75".
Rational parse_rational(const std::string& text);

/// Decimal expansion with the given number of fractional digits (round toward zero).
std::string rat_decimal(const Rational& q, int digits);

inline std::size_t rat_den_bits(const Rational& q) {
    return mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

} // namespace hypermatch
