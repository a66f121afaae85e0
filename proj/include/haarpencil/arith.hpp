#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace haarpencil {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

// n! / (a_1! a_2! ... a_g!) for a composition of n.
inline Int multinomial(long n, const std::vector<int>& alpha) {
    Int r = factorial(n);
    long s = 0;
    for (int a : alpha) {
        if (a < 0) throw std::invalid_argument("multinomial: negative entry");
        r /= factorial(a);
        s += a;
    }
    if (s != n) throw std::invalid_argument("multinomial: entries do not sum to n");
    return r;
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r = 1;
    Rat b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline std::string rat_to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_str();
}

// Exact base-10 parsing: "p/q", "-3", "0.25", "1e-2" are all accepted.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_from_string: empty token");
    if (s.find('/') != std::string::npos) {
        Rat q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
        q.canonicalize();
        return q;
    }
    std::string t = s;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
        neg = (t[0] == '-');
        t = t.substr(1);
    }
    long exp10 = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(t.substr(epos + 1));
        t = t.substr(0, epos);
    }
    auto dot = t.find('.');
    std::string digits = t;
    if (dot != std::string::npos) {
        digits = t.substr(0, dot) + t.substr(dot + 1);
        exp10 -= static_cast<long>(t.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("rat_from_string: bad number '" + s + "'");
    Rat q(Int(digits, 10));
    Int ten = 10;
    if (exp10 >= 0)
        q *= Rat(pow_int(ten, static_cast<unsigned long>(exp10)));
    else
        q /= Rat(pow_int(ten, static_cast<unsigned long>(-exp10)));
    if (neg) q = -q;
    q.canonicalize();
    return q;
}

// Gaussian rational: the exact-arithmetic companion of std::complex<double>.
struct RatComplex {
    Rat re{0};
    Rat im{0};

    RatComplex() = default;
    RatComplex(Rat r) : re(std::move(r)) {}
    RatComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im == 0; }
    Rat norm2() const { return re * re + im * im; }

    RatComplex conj() const { return {re, -im}; }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    RatComplex& operator+=(const RatComplex& o) { return *this = *this + o; }
    RatComplex& operator*=(const RatComplex& o) { return *this = *this * o; }
    friend bool operator==(const RatComplex& a, const RatComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline RatComplex pow_rc(const RatComplex& base, unsigned long e) {
    RatComplex r{Rat(1)};
    RatComplex b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline std::string rat_complex_to_string(const RatComplex& z) {
    if (z.is_real()) return rat_to_string(z.re);
    std::string im = rat_to_string(z.im);
    if (!im.empty() && im[0] != '-') im = "+" + im;
    return rat_to_string(z.re) + im + "i";
}

}  // namespace haarpencil
