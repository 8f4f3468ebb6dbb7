#include "oncat/scalar_field.hpp"

#include <stdexcept>

namespace oncat {

FpScalarField::Value FpScalarField::pow(Value base, std::uint64_t e) const {
    Value acc = 1;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FpScalarField FpScalarField::make(std::uint64_t p, long N) {
    if (p < 2) throw std::invalid_argument("fp field: modulus must be a prime");
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("fp field: modulus is not prime");
    if ((p - 1) % static_cast<std::uint64_t>(N) != 0)
        throw std::invalid_argument("fp field: prime must satisfy p = 1 mod N, N = " +
                                    std::to_string(N));
    FpScalarField sf;
    sf.p = p;
    sf.N = N;

    // Find a generator of F_p^* by testing against the prime factors of p-1.
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t rest = p - 1;
    for (std::uint64_t d = 2; d * d <= rest; ++d) {
        if (rest % d) continue;
        prime_factors.push_back(d);
        while (rest % d == 0) rest /= d;
    }
    if (rest > 1) prime_factors.push_back(rest);
    std::uint64_t g = 0;
    for (std::uint64_t cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (auto q : prime_factors)
            if (sf.pow(cand, (p - 1) / q) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw std::logic_error("fp field: no generator found");
    Value root = sf.pow(g, (p - 1) / static_cast<std::uint64_t>(N));
    // Order is exactly N by construction; assert anyway.
    Value acc = 1;
    for (long e = 0; e < N; ++e) {
        sf.qpow.push_back(acc);
        acc = sf.mul(acc, root);
    }
    if (acc != 1) throw std::logic_error("fp field: root order mismatch");
    for (long e = 1; e < N; ++e)
        if (sf.qpow[e] == 1) throw std::logic_error("fp field: root not primitive");
    return sf;
}

}  // namespace oncat
