#pragma once

#include <stdexcept>
#include <vector>

namespace oncat {

/// Prime data attached to n = p_1^{a_1} ... p_t^{a_t}:
/// the radical m, the conductor N = n^2/m, the degrees n_k = n/p_k of the
/// differentials, m_k = m/p_k, and the integral degree
/// ell = sum_k n_k (p_k - 1).
struct Factorization {
    long n = 0;
    std::vector<std::pair<long, int>> primes;  // (p_k, a_k), p increasing
    long t = 0;
    long m = 0;
    long N = 0;
    long ell = 0;
    std::vector<long> n_k;
    std::vector<long> m_k;

    long p(int k) const { return primes[k].first; }
};

/// Trial-division factorization plus the derived constants. Requires n >= 1.
Factorization factorize(long n);

}  // namespace oncat
