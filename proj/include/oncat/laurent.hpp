#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oncat {

/// Integer Laurent polynomial in the formal variable v, stored as a sparse
/// exponent -> coefficient map with no zero coefficients.
class LaurentPolynomial {
  public:
    using CoeffMap = std::map<long, mpz_class>;

    LaurentPolynomial() = default;
    explicit LaurentPolynomial(long constant) { set_coeff(0, mpz_class(constant)); }
    explicit LaurentPolynomial(const mpz_class& constant) { set_coeff(0, constant); }

    static LaurentPolynomial zero() { return LaurentPolynomial(); }
    static LaurentPolynomial one() { return LaurentPolynomial(1); }
    /// c * v^e
    static LaurentPolynomial term(const mpz_class& c, long e);
    /// v^e
    static LaurentPolynomial nu(long e = 1) { return term(1, e); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    const CoeffMap& coeffs() const { return coeffs_; }
    mpz_class coeff(long e) const;
    void set_coeff(long e, const mpz_class& c);

    /// Largest exponent with nonzero coefficient; zero polynomial has none.
    long max_exp() const;
    long min_exp() const;
    /// max_exp - min_exp for nonzero input, -1 for zero.
    long span() const { return is_zero() ? -1 : max_exp() - min_exp(); }
    const mpz_class& leading_coeff() const;
    long num_terms() const { return static_cast<long>(coeffs_.size()); }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o);
    LaurentPolynomial& operator-=(const LaurentPolynomial& o);
    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-() const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial& operator*=(const LaurentPolynomial& o);
    LaurentPolynomial operator*(const mpz_class& c) const;
    bool operator==(const LaurentPolynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }

    LaurentPolynomial shifted(long e) const;  // multiply by v^e
    /// In-place *this -= c * v^e * b; avoids temporaries in division loops.
    void sub_scaled_shifted(const LaurentPolynomial& b, const mpz_class& c, long e);
    /// In-place multiplication by a nonzero integer scalar.
    void scale(const mpz_class& c);
    LaurentPolynomial pow(unsigned long k) const;
    /// v -> v^s; s may be negative (s = -1 is the bar involution).
    LaurentPolynomial substitute_power(long s) const;

    /// Exact division; throws std::domain_error if the division is not exact.
    LaurentPolynomial div_exact(const LaurentPolynomial& divisor) const;
    std::optional<LaurentPolynomial> try_div(const LaurentPolynomial& divisor) const;
    bool divisible_by(const LaurentPolynomial& divisor) const;

    /// gcd of all integer coefficients (positive; 0 for the zero polynomial).
    mpz_class content() const;
    /// Unit-normalized representative: min exponent 0, primitive integer
    /// content, positive leading coefficient.
    LaurentPolynomial normalized() const;

    /// Evaluation at an integer point (used for dimension counts: f(1)).
    mpz_class eval_int(const mpz_class& x) const;

    std::string to_string(const std::string& var = "v") const;
    static LaurentPolynomial parse(const std::string& text, const std::string& var = "v");

  private:
    CoeffMap coeffs_;
};

LaurentPolynomial operator*(const mpz_class& c, const LaurentPolynomial& p);

/// [a]_v = 1 + v + ... + v^(a-1).
LaurentPolynomial q_integer(long a);

/// Gaussian binomial via the recursion [a,b] = [a-1,b-1] + v^b [a-1,b].
/// Requires 0 <= b <= a.
LaurentPolynomial quantum_binomial(long a, long b);

/// n-th cyclotomic polynomial, computed by recursive division of v^n - 1 by
/// the cyclotomic polynomials of the proper divisors of n. Memoized and safe
/// for concurrent use. Requires n >= 1.
const LaurentPolynomial& cyclotomic_polynomial(long n);

/// Normalized gcd in Z[v, v^-1] via a primitive pseudo-remainder sequence.
/// The result is unit-normalized as in LaurentPolynomial::normalized().
LaurentPolynomial gcd_normalized(LaurentPolynomial a, LaurentPolynomial b);

struct CyclotomicIdentityReport {
    long n = 0;
    bool gcd_identity = false;           // Phi_m = gcd([m]/[m/p_1], ..., [m]/[m/p_t])
    bool prime_substitution = false;     // Phi_{p_k}(v^{m/p_k}) = [m]/[m/p_k] for all k
    bool radical_substitution = false;   // Phi_n(v) = Phi_m(v^{n/m})
    bool all_pass() const { return gcd_identity && prime_substitution && radical_substitution; }
};

/// Checks the three cyclotomic polynomial identities exactly for n >= 2.
CyclotomicIdentityReport verify_cyclotomic_identities(long n);

}  // namespace oncat
