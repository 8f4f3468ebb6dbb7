#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "oncat/laurent.hpp"

namespace oncat {

/// Shared per-conductor data for Q(zeta_N): the minimal polynomial Phi_N and
/// the reduction table for products. Obtained through the memoized registry
/// CyclotomicField::get(N); instances are immutable.
class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
  public:
    static std::shared_ptr<const CyclotomicField> get(long N);

    long conductor() const { return N_; }
    long degree() const { return phi_; }
    const std::vector<mpz_class>& modulus() const { return modulus_; }
    /// Coordinates of zeta^e in the power basis 1, zeta, ..., zeta^{phi-1};
    /// e may be any integer (reduced mod N first).
    const std::vector<mpz_class>& power_coords(long e) const;

  private:
    explicit CyclotomicField(long N);

    long N_;
    long phi_;
    std::vector<mpz_class> modulus_;                 // Phi_N, ascending, monic
    std::vector<std::vector<mpz_class>> zeta_pow_;   // coords of zeta^e for e in [0, N)
};

/// Element of Q(zeta_N), stored as exact rational coordinates in the power
/// basis modulo Phi_N.
class CyclotomicNumber {
  public:
    CyclotomicNumber() = default;  // usable only after assignment
    explicit CyclotomicNumber(std::shared_ptr<const CyclotomicField> field);
    CyclotomicNumber(std::shared_ptr<const CyclotomicField> field, const mpq_class& rational);

    static CyclotomicNumber zero(const std::shared_ptr<const CyclotomicField>& f) {
        return CyclotomicNumber(f);
    }
    static CyclotomicNumber one(const std::shared_ptr<const CyclotomicField>& f) {
        return CyclotomicNumber(f, 1);
    }
    /// zeta^e for any integer e.
    static CyclotomicNumber zeta_power(const std::shared_ptr<const CyclotomicField>& f, long e);

    const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
    long conductor() const { return field_->conductor(); }
    const std::vector<mpq_class>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// The rational value when is_rational(); throws otherwise.
    mpq_class rational_value() const;

    CyclotomicNumber operator+(const CyclotomicNumber& o) const;
    CyclotomicNumber operator-(const CyclotomicNumber& o) const;
    CyclotomicNumber operator-() const;
    CyclotomicNumber operator*(const CyclotomicNumber& o) const;
    CyclotomicNumber operator*(const mpq_class& c) const;
    CyclotomicNumber& operator+=(const CyclotomicNumber& o);
    CyclotomicNumber& operator-=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(const CyclotomicNumber& o);
    bool operator==(const CyclotomicNumber& o) const;
    bool operator!=(const CyclotomicNumber& o) const { return !(*this == o); }

    /// Field inverse by the extended Euclidean algorithm against Phi_N.
    /// Throws std::domain_error on zero.
    CyclotomicNumber inverse() const;
    CyclotomicNumber pow(long e) const;

    /// In-place *this += a * b without allocating a full intermediate.
    void add_mul(const CyclotomicNumber& a, const CyclotomicNumber& b);

    std::string to_string(const std::string& var = "z") const;
    static CyclotomicNumber parse(const std::shared_ptr<const CyclotomicField>& f,
                                  const std::string& text, const std::string& var = "z");

  private:
    void check_same_field(const CyclotomicNumber& o) const;

    std::shared_ptr<const CyclotomicField> field_;
    std::vector<mpq_class> coords_;
};

/// Primitive N-th root of unity in Q(zeta_N).
CyclotomicNumber root_of_unity(long N);

/// x^d != 1 for every proper divisor d of N (and x^N = 1).
bool is_primitive_root(const CyclotomicNumber& x, long N);

/// Exact Horner evaluation of an integer Laurent polynomial; x must be
/// invertible when p has negative exponents.
CyclotomicNumber evaluate(const LaurentPolynomial& p, const CyclotomicNumber& x);

}  // namespace oncat
