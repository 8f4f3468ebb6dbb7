#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oncat/cyclotomic.hpp"

using oncat::CyclotomicField;
using oncat::CyclotomicNumber;
using oncat::LaurentPolynomial;

namespace {

CyclotomicNumber random_elem(const std::shared_ptr<const CyclotomicField>& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    CyclotomicNumber x(f);
    for (long e = 0; e < f->degree(); ++e) {
        mpq_class c(num(rng), den(rng));
        c.canonicalize();  // the two-argument mpq_class ctor does not
        x += CyclotomicNumber::zeta_power(f, e) * c;
    }
    return x;
}

}  // namespace

TEST_CASE("roots of unity") {
    auto z1 = oncat::root_of_unity(1);
    CHECK(z1.is_one());

    auto f6 = CyclotomicField::get(6);
    auto z6 = oncat::root_of_unity(6);
    CHECK(oncat::is_primitive_root(z6, 6));
    CHECK(z6.pow(6).is_one());
    CHECK_FALSE(z6.pow(3).is_one());

    // Reduction oracle: long division of z^3 by Phi_6 = z^2 - z + 1 gives
    // z^3 = (z + 1)(z^2 - z + 1) - 1, so z^3 = -1.
    CHECK(z6.pow(3) == -CyclotomicNumber::one(f6));
    // Same oracle: z^2 = z - 1, so z + z^-1 = (z^2 + 1)/z = z/z = 1.
    CHECK(z6 + z6.inverse() == CyclotomicNumber::one(f6));
}

TEST_CASE("field axioms (randomized)") {
    std::mt19937_64 rng(123);
    for (long N : {4L, 5L, 6L, 12L}) {
        auto f = CyclotomicField::get(N);
        for (int trial = 0; trial < 25; ++trial) {
            auto a = random_elem(f, rng);
            auto b = random_elem(f, rng);
            auto c = random_elem(f, rng);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == CyclotomicNumber::one(f));
        }
    }
    auto f6 = CyclotomicField::get(6);
    CHECK_THROWS_AS(CyclotomicNumber::zero(f6).inverse(), std::domain_error);
    CHECK_THROWS_AS(CyclotomicNumber::one(f6) + CyclotomicNumber::one(CyclotomicField::get(5)),
                    std::invalid_argument);
}

TEST_CASE("evaluation of Laurent polynomials") {
    // [p] at a primitive p-th root vanishes (it equals Phi_p there).
    for (long p : {2L, 3L, 5L, 7L}) {
        auto zp = oncat::root_of_unity(p);
        CHECK(oncat::evaluate(oncat::q_integer(p), zp).is_zero());
    }

    // quantum_binomial(3,1) at zeta_3 = [3] at zeta_3 = 0.
    auto z3 = oncat::root_of_unity(3);
    CHECK(oncat::evaluate(oncat::quantum_binomial(3, 1), z3).is_zero());

    // quantum_binomial(p, b) at a primitive p-th root is 0 for 0 < b < p.
    for (long p : {2L, 3L, 5L}) {
        auto zp = oncat::root_of_unity(p);
        for (long b = 1; b < p; ++b)
            CHECK(oncat::evaluate(oncat::quantum_binomial(p, b), zp).is_zero());
        for (long b = 1; b < p; ++b)  // and does not vanish one row below
            CHECK_FALSE(oncat::evaluate(oncat::quantum_binomial(p - 1, b - 1), zp).is_zero());
    }

    auto z6 = oncat::root_of_unity(6);
    CHECK(oncat::evaluate(LaurentPolynomial::nu(2), z6) == z6.pow(2));

    // Negative exponents go through the inverse.
    auto p = LaurentPolynomial::parse("v^-2 + 3 + v^5");
    auto direct = z6.pow(-2) + CyclotomicNumber(z6.field(), 3) + z6.pow(5);
    CHECK(oncat::evaluate(p, z6) == direct);

    // Horner agrees with naive term-by-term evaluation on random data.
    std::mt19937_64 rng(5);
    auto f12 = CyclotomicField::get(12);
    auto z12 = oncat::root_of_unity(12);
    std::uniform_int_distribution<long> exp(-6, 6);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        LaurentPolynomial q;
        CyclotomicNumber naive = CyclotomicNumber::zero(f12);
        for (int t = 0; t < 5; ++t) {
            long e = exp(rng);
            int c = coeff(rng);
            q += LaurentPolynomial::term(c, e);
        }
        for (auto& [e, c] : q.coeffs()) naive += z12.pow(e) * mpq_class(c);
        CHECK(oncat::evaluate(q, z12) == naive);
    }
}

TEST_CASE("serialization") {
    auto f12 = CyclotomicField::get(12);
    auto x = CyclotomicNumber::parse(f12, "1/2*z^3 - 1");
    CHECK(x == CyclotomicNumber::zeta_power(f12, 3) * mpq_class(1, 2) - CyclotomicNumber::one(f12));
    CHECK(CyclotomicNumber::parse(f12, x.to_string()) == x);

    // Whitespace-insensitive; exponents reduce mod N.
    CHECK(CyclotomicNumber::parse(f12, " 1 / 2 * z ^ 3-1 ") == x);
    CHECK(CyclotomicNumber::parse(f12, "z^13") == oncat::root_of_unity(12));

    std::mt19937_64 rng(9);
    for (long N : {3L, 6L, 8L}) {
        auto f = CyclotomicField::get(N);
        for (int trial = 0; trial < 40; ++trial) {
            auto a = random_elem(f, rng);
            CHECK(CyclotomicNumber::parse(f, a.to_string()) == a);
        }
    }
    CHECK_THROWS_AS(CyclotomicNumber::parse(f12, ""), std::invalid_argument);
    CHECK_THROWS_AS(CyclotomicNumber::parse(f12, "1/0"), std::invalid_argument);
}
