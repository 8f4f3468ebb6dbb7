#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oncat/factorization.hpp"
#include "oncat/laurent.hpp"
#include "oracles.hpp"

using oncat::LaurentPolynomial;
using oncat::cyclotomic_polynomial;
using oncat::q_integer;
using oncat::quantum_binomial;

namespace {

LaurentPolynomial random_poly(std::mt19937_64& rng, int max_terms, long exp_window) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<long> exp(-exp_window, exp_window);
    std::uniform_int_distribution<int> coeff(-4, 4);
    LaurentPolynomial p;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) p += LaurentPolynomial::term(coeff(rng), exp(rng));
    return p;
}

}  // namespace

TEST_CASE("laurent ring basics") {
    auto v = LaurentPolynomial::nu(1);
    auto vinv = LaurentPolynomial::nu(-1);
    CHECK(v * vinv == LaurentPolynomial::one());

    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_poly(rng, 5, 8);
        auto b = random_poly(rng, 5, 8);
        auto c = random_poly(rng, 5, 8);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("exact division") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_poly(rng, 4, 6);
        auto b = random_poly(rng, 4, 6);
        if (b.is_zero()) continue;
        CHECK((a * b).div_exact(b) == a);
    }
    auto one = LaurentPolynomial::one();
    auto v = LaurentPolynomial::nu(1);
    CHECK_FALSE(one.divisible_by(one + v));
    CHECK((v + LaurentPolynomial::nu(-1)).divisible_by(v));
}

TEST_CASE("q-integers and quantum binomials") {
    CHECK(q_integer(1) == LaurentPolynomial::one());
    CHECK(q_integer(0).is_zero());
    for (long a = 0; a <= 8; ++a) {
        CHECK(quantum_binomial(a, 0) == LaurentPolynomial::one());
        CHECK(quantum_binomial(a, a) == LaurentPolynomial::one());
    }

    // Frozen expected value, oracle: [4][3]/([2][2][1]) by polynomial division.
    CHECK(oracles::binomial_by_factorials(4, 2) == LaurentPolynomial::parse("1 + v + 2*v^2 + v^3 + v^4"));
    CHECK(quantum_binomial(4, 2) == LaurentPolynomial::parse("1 + v + 2*v^2 + v^3 + v^4"));

    for (long a = 0; a <= 9; ++a)
        for (long b = 0; b <= a; ++b) CHECK(quantum_binomial(a, b) == oracles::binomial_by_factorials(a, b));

    // Recursion identity from the other leg: [a,b] = v^{a-b} [a-1,b-1] + [a-1,b].
    for (long a = 1; a <= 9; ++a)
        for (long b = 1; b < a; ++b)
            CHECK(quantum_binomial(a, b) ==
                  quantum_binomial(a - 1, b - 1).shifted(a - b) + quantum_binomial(a - 1, b));

    CHECK_THROWS_AS(quantum_binomial(3, 4), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == LaurentPolynomial::parse("v - 1"));
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) CHECK(cyclotomic_polynomial(p) == q_integer(p));

    // Oracle for n = 6: divide v^6 - 1 by Phi_1 Phi_2 Phi_3 built from the
    // first/prime cases.
    auto phi1 = LaurentPolynomial::parse("v - 1");
    auto phi6_oracle = (LaurentPolynomial::nu(6) - LaurentPolynomial::one())
                           .div_exact(phi1 * q_integer(2) * q_integer(3));
    CHECK(phi6_oracle == LaurentPolynomial::parse("v^2 - v + 1"));
    CHECK(cyclotomic_polynomial(6) == phi6_oracle);

    CHECK(cyclotomic_polynomial(12) == LaurentPolynomial::parse("v^4 - v^2 + 1"));
    CHECK(cyclotomic_polynomial(12) == cyclotomic_polynomial(6).substitute_power(2));

    CHECK_THROWS_AS(cyclotomic_polynomial(0), std::invalid_argument);

    // prod_{d | n} Phi_d = v^n - 1, exactly.
    for (long n = 1; n <= 150; ++n) {
        LaurentPolynomial prod = LaurentPolynomial::one();
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) prod *= cyclotomic_polynomial(d);
        CHECK(prod == LaurentPolynomial::nu(n) - LaurentPolynomial::one());
    }
}

TEST_CASE("normalized gcd") {
    std::mt19937_64 rng(4242);
    int done = 0;
    while (done < 60) {
        auto a = random_poly(rng, 3, 4);
        auto b = random_poly(rng, 3, 4);
        auto c = random_poly(rng, 3, 4);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        ++done;
        auto g = oncat::gcd_normalized(a * c, b * c);
        // c divides the gcd, and the gcd divides both products.
        CHECK(g.divisible_by(c.normalized()));
        CHECK((a * c).normalized().divisible_by(g));
        CHECK((b * c).normalized().divisible_by(g));
        // Determinism/normalization: min exponent 0, primitive, positive lead.
        CHECK(g.min_exp() == 0);
        CHECK(g.content() == 1);
        CHECK(g.leading_coeff() > 0);
        // Unit invariance: gcd is unchanged by +-v^k scalings of the inputs.
        CHECK(oncat::gcd_normalized(a * c, b * c) == oncat::gcd_normalized(-(a * c).shifted(3), (b * c).shifted(-2)));
        // Independent oracle: rational Euclid, rescaled to primitive.
        CHECK(g == oracles::rational_gcd_oracle(a * c, b * c));
    }
}

TEST_CASE("cyclotomic identity report") {
    auto rep6 = oncat::verify_cyclotomic_identities(6);
    CHECK(rep6.all_pass());

    // gcd((v^6-1)/(v^3-1), (v^6-1)/(v^2-1)) = v^2 - v + 1, by the rational
    // Euclid oracle.
    auto s1 = (LaurentPolynomial::nu(6) - LaurentPolynomial::one())
                  .div_exact(LaurentPolynomial::nu(3) - LaurentPolynomial::one());
    auto s2 = (LaurentPolynomial::nu(6) - LaurentPolynomial::one())
                  .div_exact(LaurentPolynomial::nu(2) - LaurentPolynomial::one());
    CHECK(oracles::rational_gcd_oracle(s1, s2) == LaurentPolynomial::parse("v^2 - v + 1"));
    CHECK(oncat::gcd_normalized(s1, s2) == LaurentPolynomial::parse("v^2 - v + 1"));

    for (long p : {2L, 3L, 5L, 11L}) {
        auto rep = oncat::verify_cyclotomic_identities(p);
        CHECK(rep.all_pass());
    }
    CHECK(oncat::verify_cyclotomic_identities(12).all_pass());
    CHECK(oncat::verify_cyclotomic_identities(360).all_pass());
    CHECK_THROWS_AS(oncat::verify_cyclotomic_identities(1), std::invalid_argument);
}

TEST_CASE("factorization constants") {
    auto f6 = oncat::factorize(6);
    CHECK(f6.t == 2);
    CHECK(f6.primes == std::vector<std::pair<long, int>>{{2, 1}, {3, 1}});
    CHECK(f6.m == 6);
    CHECK(f6.N == 6);
    CHECK(f6.n_k == std::vector<long>{3, 2});
    CHECK(f6.ell == 7);

    auto f12 = oncat::factorize(12);
    CHECK(f12.m == 6);
    CHECK(f12.N == 24);
    CHECK(f12.n_k == std::vector<long>{6, 4});
    CHECK(f12.ell == 6 * 1 + 4 * 2);

    auto f7 = oncat::factorize(7);
    CHECK(f7.t == 1);
    CHECK(f7.m == 7);
    CHECK(f7.N == 7);
    CHECK(f7.n_k == std::vector<long>{1});
    CHECK(f7.ell == 6);

    auto f30 = oncat::factorize(30);
    CHECK(f30.N == 30);
    CHECK(f30.ell == 15 + 10 * 2 + 6 * 4);
}

TEST_CASE("parse and print round-trip") {
    CHECK(LaurentPolynomial::parse("v^-2 + 3 + v^5").to_string() == "v^-2 + 3 + v^5");
    CHECK(LaurentPolynomial::parse(" -2*v^3+1") == LaurentPolynomial::parse("1 - 2 * v ^ 3"));
    CHECK(LaurentPolynomial::parse("0").is_zero());
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_poly(rng, 6, 9);
        CHECK(LaurentPolynomial::parse(p.to_string()) == p);
    }
    CHECK_THROWS_AS(LaurentPolynomial::parse("v^"), std::invalid_argument);
}
