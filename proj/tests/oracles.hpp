#pragma once

// Independent reference implementations used to freeze expected values in the
// test suites. These deliberately avoid the library's own code paths: dense
// rational polynomial arithmetic with textbook algorithms only.

#include <gmpxx.h>

#include <vector>

#include "oncat/laurent.hpp"

namespace oracles {

// Dense polynomial over Q, index = exponent.
using QPoly = std::vector<mpq_class>;

inline void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qpoly_from_laurent(const oncat::LaurentPolynomial& f) {
    QPoly p;
    if (f.is_zero()) return p;
    if (f.min_exp() < 0) throw std::domain_error("oracle qpoly: negative exponent");
    p.assign(static_cast<size_t>(f.max_exp()) + 1, mpq_class(0));
    for (auto& [e, c] : f.coeffs()) p[static_cast<size_t>(e)] = mpq_class(c);
    return p;
}

inline QPoly qpoly_mod(QPoly a, const QPoly& b) {
    qtrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class c = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        qtrim(a);
    }
    return a;
}

inline QPoly qpoly_gcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (!b.empty()) {
        QPoly r = qpoly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rescale a rational polynomial to the primitive integer representative with
// positive leading coefficient.
inline oncat::LaurentPolynomial qpoly_to_primitive(const QPoly& p) {
    oncat::LaurentPolynomial out;
    if (p.empty()) return out;
    mpz_class den = 1;
    for (auto& c : p) {
        mpz_class d = c.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    for (size_t i = 0; i < p.size(); ++i) {
        mpq_class scaled = p[i] * den;
        out.set_coeff(static_cast<long>(i), scaled.get_num());
    }
    return out.normalized();
}

// Direct polynomial gcd over Q, rescaled to the primitive integer gcd.
inline oncat::LaurentPolynomial rational_gcd_oracle(const oncat::LaurentPolynomial& a,
                                                    const oncat::LaurentPolynomial& b) {
    QPoly g = qpoly_gcd(qpoly_from_laurent(a.normalized()), qpoly_from_laurent(b.normalized()));
    return qpoly_to_primitive(g);
}

// [a]! / ([b]! [a-b]!) by polynomial division of the multiplied-out factorials.
inline oncat::LaurentPolynomial binomial_by_factorials(long a, long b) {
    auto factorial = [](long k) {
        oncat::LaurentPolynomial f = oncat::LaurentPolynomial::one();
        for (long j = 1; j <= k; ++j) f *= oncat::q_integer(j);
        return f;
    };
    return factorial(a).div_exact(factorial(b) * factorial(a - b));
}

}  // namespace oracles
