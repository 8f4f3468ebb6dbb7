#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oncat/structure.hpp"

namespace oncat {

/// Scalar policy for the bosonization over Q(zeta_N).
struct CycScalarField {
    using Value = CyclotomicNumber;

    std::shared_ptr<const CyclotomicField> field;
    long N = 0;
    std::vector<Value> qpow;

    static CycScalarField make(long N) {
        CycScalarField sf;
        sf.field = CyclotomicField::get(N);
        sf.N = N;
        for (long e = 0; e < N; ++e) sf.qpow.push_back(CyclotomicNumber::zeta_power(sf.field, e));
        return sf;
    }

    Value zero() const { return CyclotomicNumber::zero(field); }
    Value one() const { return CyclotomicNumber::one(field); }
    Value from_long(long v) const { return CyclotomicNumber(field, mpq_class(v)); }
    const Value& q_power(long e) const {
        long r = e % N;
        if (r < 0) r += N;
        return qpow[r];
    }
    static Value add(const Value& a, const Value& b) { return a + b; }
    static Value sub(const Value& a, const Value& b) { return a - b; }
    static Value mul(const Value& a, const Value& b) { return a * b; }
    static Value neg(const Value& a) { return -a; }
    static bool is_zero(const Value& a) { return a.is_zero(); }
    static bool eq(const Value& a, const Value& b) { return a == b; }
    static std::string str(const Value& a) { return a.to_string(); }
    std::string describe() const { return "Q(zeta_" + std::to_string(N) + ")"; }
};

/// Scalar policy for the optional fast mode over a prime field F_p with
/// p = 1 mod N; the root of unity is an exponentiated generator.
struct FpScalarField {
    using Value = std::uint64_t;

    std::uint64_t p = 0;
    long N = 0;
    std::vector<Value> qpow;

    /// Throws std::invalid_argument unless p is prime and p = 1 mod N.
    static FpScalarField make(std::uint64_t p, long N);

    Value zero() const { return 0; }
    Value one() const { return 1; }
    Value from_long(long v) const {
        long r = static_cast<long>(v % static_cast<long>(p));
        if (r < 0) r += static_cast<long>(p);
        return static_cast<Value>(r);
    }
    const Value& q_power(long e) const {
        long r = e % N;
        if (r < 0) r += N;
        return qpow[r];
    }
    Value add(const Value& a, const Value& b) const {
        Value s = a + b;
        return s >= p ? s - p : s;
    }
    Value sub(const Value& a, const Value& b) const { return a >= b ? a - b : a + p - b; }
    Value mul(const Value& a, const Value& b) const {
        return static_cast<Value>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Value neg(const Value& a) const { return a == 0 ? 0 : p - a; }
    static bool is_zero(const Value& a) { return a == 0; }
    static bool eq(const Value& a, const Value& b) { return a == b; }
    static std::string str(const Value& a) { return std::to_string(a); }
    std::string describe() const { return "F_" + std::to_string(p); }

    Value pow(Value base, std::uint64_t e) const;
};

}  // namespace oncat
