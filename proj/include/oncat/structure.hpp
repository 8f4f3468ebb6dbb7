#pragma once

#include <memory>
#include <vector>

#include "oncat/cyclotomic.hpp"
#include "oncat/factorization.hpp"
#include "oncat/laurent.hpp"

namespace oncat {

/// Combinatorics of the PBW monomials d^a = d_1^{a_1} ... d_t^{a_t} with
/// 0 <= a_k < p_k, packed into indices [0, m) in mixed radix, where
/// m = prod p_k is the radical of n (the dimension of H_n). Scalar-free so
/// the same tables back every ground field.
struct PbwTables {
    Factorization fac;
    std::vector<std::vector<int>> exponents;  // [idx] -> multi-exponent
    std::vector<long> degree;                 // deg d^a = sum a_k n_k
    std::vector<long> product;                // [a1 * m + a2] -> packed sum, or -1 if some a_k+b_k >= p_k
    long top = 0;                             // index of d^{p_1-1, ..., p_t-1}

    long count() const { return fac.m; }      // number of d-monomials = dim H_n
    long pack(const std::vector<int>& a) const;

    static std::shared_ptr<const PbwTables> make(const Factorization& fac);
};

/// All structure constants of H_n over Q(zeta_N): the factorization data,
/// the field, the chosen primitive root q, and xi_k = q^{n_k}.
class HnStructure {
  public:
    /// Memoized per n; requires n >= 2. Construction verifies that
    /// xi_k^{n_k} is a primitive p_k-th root of unity and that the PBW degree
    /// enumeration reproduces dim_nu(H_n) = prod_k (1-nu^n)/(1-nu^{n_k}).
    static std::shared_ptr<const HnStructure> make(long n);

    const Factorization& fac() const { return fac_; }
    long n() const { return fac_.n; }
    long t() const { return fac_.t; }
    long N() const { return fac_.N; }
    long ell() const { return fac_.ell; }
    long n_k(int k) const { return fac_.n_k[k]; }
    long p_k(int k) const { return fac_.primes[k].first; }

    const std::shared_ptr<const PbwTables>& pbw() const { return pbw_; }
    const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
    const CyclotomicNumber& q() const { return q_; }
    const CyclotomicNumber& xi() const { return xi_; }
    const CyclotomicNumber& xi_k(int k) const { return xi_k_[k]; }

    /// q^e for any integer e (reduced mod N), from a precomputed table.
    const CyclotomicNumber& q_power(long e) const;

    CyclotomicNumber field_zero() const { return CyclotomicNumber::zero(field_); }
    CyclotomicNumber field_one() const { return CyclotomicNumber::one(field_); }

    /// Graded dimension of H_n from the PBW degrees.
    LaurentPolynomial graded_dim() const;
    /// The product formula prod_k (1 - nu^n)/(1 - nu^{n_k}), expanded.
    LaurentPolynomial graded_dim_formula() const;

    /// Same structure iff same n (all other data is derived).
    bool same_as(const HnStructure& o) const { return fac_.n == o.fac_.n; }

  private:
    explicit HnStructure(long n);

    Factorization fac_;
    std::shared_ptr<const PbwTables> pbw_;
    std::shared_ptr<const CyclotomicField> field_;
    CyclotomicNumber q_;
    CyclotomicNumber xi_;
    std::vector<CyclotomicNumber> xi_k_;
    std::vector<CyclotomicNumber> q_pow_;
};

using StructurePtr = std::shared_ptr<const HnStructure>;

}  // namespace oncat
