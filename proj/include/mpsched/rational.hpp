#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace mpsched {

// Exact arithmetic everywhere: speeds, completion times and objective values
// are arbitrary-precision rationals, kept canonical (lowest terms, positive
// denominator) by GMP.
using Rational = mpq_class;

static_assert(sizeof(long) >= 8, "64-bit long assumed for GMP interop");

inline mpz_class to_mpz(long long v) { return mpz_class(static_cast<long>(v)); }

// GMP's C++ operators have no long long overloads; route through mpz.
inline Rational rat(long long v) { return Rational(to_mpz(v)); }

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw BadArgument("rational with zero denominator");
    Rational r{to_mpz(num), to_mpz(den)};
    r.canonicalize();
    return r;
}

// Accepts "a", "a/b" and plain decimals like "0.25" (converted exactly).
inline std::optional<Rational> rat_parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::string s(text);
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!is_int(a) || !is_int(b)) return std::nullopt;
        Rational r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
        if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0) return std::nullopt;
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string a = s.substr(0, dot), b = s.substr(dot + 1);
        if (a.empty() || a == "-" || a == "+") a += "0";
        if (!is_int(a) || b.empty()) return std::nullopt;
        for (char c : b)
            if (c < '0' || c > '9') return std::nullopt;
        mpz_class ip(a), fp(b), scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, b.size());
        bool neg = ip < 0 || a[0] == '-';
        mpz_class total = abs(ip) * scale + fp;
        Rational r(total, scale);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }
    if (!is_int(s)) return std::nullopt;
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
    r.canonicalize();
    return r;
}

// "a" or "a/b", lowest terms.
inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline mpz_class rat_floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline mpz_class rat_ceil(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline long long mpz_to_ll(const mpz_class& z) {
    MPSCHED_ASSERT(z.fits_slong_p(), "integer exceeds 64-bit range");
    return z.get_si();
}

inline long long rat_floor_ll(const Rational& r) { return mpz_to_ll(rat_floor(r)); }
inline long long rat_ceil_ll(const Rational& r) { return mpz_to_ll(rat_ceil(r)); }

inline bool rat_is_integer(const Rational& r) { return r.get_den() == 1; }

// Rounded decimal rendering (half away from zero), for reports only; exact
// values remain authoritative.
inline std::string rat_decimal(const Rational& r, int digits = 6) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class num = abs(r.get_num()) * scale * 2 + r.get_den();
    mpz_class scaled = num / (r.get_den() * 2);   // round(|r| * 10^digits)
    mpz_class ip = scaled / scale, fp = scaled % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = (sgn(r) < 0 ? "-" : "") + ip.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

// 2^z for z possibly negative.
inline Rational pow2_rational(long z) {
    Rational r(1);
    if (z >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), z);
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), -z);
    return r;
}

inline bool rat_is_pow2(const Rational& r) {
    if (sgn(r) <= 0) return false;
    if (r.get_num() == 1) {
        mpz_class d = r.get_den();
        return mpz_popcount(d.get_mpz_t()) == 1;
    }
    mpz_class n = r.get_num();
    return r.get_den() == 1 && mpz_popcount(n.get_mpz_t()) == 1;
}

}  // namespace mpsched
