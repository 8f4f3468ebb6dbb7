#include "oncat/factorization.hpp"

namespace oncat {

Factorization factorize(long n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.n = n;
    long rest = n;
    for (long p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int a = 0;
        while (rest % p == 0) {
            rest /= p;
            ++a;
        }
        f.primes.emplace_back(p, a);
    }
    if (rest > 1) f.primes.emplace_back(rest, 1);
    f.t = static_cast<long>(f.primes.size());
    f.m = 1;
    for (auto& [p, a] : f.primes) f.m *= p;
    f.N = n / f.m * n;
    long ell = 0;
    long ell_alt = 0;
    for (auto& [p, a] : f.primes) {
        f.n_k.push_back(n / p);
        f.m_k.push_back(f.m / p);
        ell += (n / p) * (p - 1);
        ell_alt += n - n / p;
    }
    if (ell != ell_alt) throw std::logic_error("factorize: integral degree mismatch");
    f.ell = ell;
    return f;
}

}  // namespace oncat
