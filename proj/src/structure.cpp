#include "oncat/structure.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace oncat {

long PbwTables::pack(const std::vector<int>& a) const {
    long idx = 0;
    long stride = 1;
    for (long k = 0; k < fac.t; ++k) {
        idx += a[k] * stride;
        stride *= fac.primes[k].first;
    }
    return idx;
}

std::shared_ptr<const PbwTables> PbwTables::make(const Factorization& fac) {
    auto tab = std::make_shared<PbwTables>();
    tab->fac = fac;
    const long m = fac.m;
    tab->exponents.assign(m, std::vector<int>(fac.t, 0));
    tab->degree.assign(m, 0);
    for (long idx = 0; idx < m; ++idx) {
        long rem = idx;
        long deg = 0;
        for (long k = 0; k < fac.t; ++k) {
            long p = fac.primes[k].first;
            tab->exponents[idx][k] = static_cast<int>(rem % p);
            deg += (rem % p) * fac.n_k[k];
            rem /= p;
        }
        tab->degree[idx] = deg;
    }
    tab->product.assign(m * m, -1);
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) {
            std::vector<int> sum(fac.t);
            bool ok = true;
            for (long k = 0; k < fac.t; ++k) {
                sum[k] = tab->exponents[a][k] + tab->exponents[b][k];
                if (sum[k] >= fac.primes[k].first) ok = false;
            }
            if (ok) tab->product[a * m + b] = tab->pack(sum);
        }
    std::vector<int> topv(fac.t);
    for (long k = 0; k < fac.t; ++k) topv[k] = static_cast<int>(fac.primes[k].first - 1);
    tab->top = tab->pack(topv);
    return tab;
}

HnStructure::HnStructure(long n) : fac_(factorize(n)) {
    if (n < 2) throw std::invalid_argument("HnStructure: n >= 2 required");
    pbw_ = PbwTables::make(fac_);
    field_ = CyclotomicField::get(fac_.N);
    q_ = CyclotomicNumber::zeta_power(field_, 1);
    q_pow_.reserve(fac_.N);
    for (long e = 0; e < fac_.N; ++e) q_pow_.push_back(CyclotomicNumber::zeta_power(field_, e));
    xi_ = q_power(fac_.n / fac_.m);
    for (long k = 0; k < fac_.t; ++k) xi_k_.push_back(q_power(fac_.n_k[k]));

    // xi_k^{n_k} = q^{n_k^2} must be a primitive p_k-th root of unity.
    for (long k = 0; k < fac_.t; ++k) {
        CyclotomicNumber root = xi_k_[k].pow(fac_.n_k[k]);
        if (!root.pow(fac_.primes[k].first).is_one())
            throw std::logic_error("HnStructure: xi_k^{n_k} is not a p_k-th root");
        if (root.is_one() && fac_.primes[k].first > 1)
            throw std::logic_error("HnStructure: xi_k^{n_k} is not primitive");
    }

    if (graded_dim() != graded_dim_formula())
        throw std::logic_error("HnStructure: graded dimension mismatch with the product formula");
}

const CyclotomicNumber& HnStructure::q_power(long e) const {
    long r = e % fac_.N;
    if (r < 0) r += fac_.N;
    return q_pow_[r];
}

LaurentPolynomial HnStructure::graded_dim() const {
    LaurentPolynomial d;
    for (long idx = 0; idx < fac_.m; ++idx) d += LaurentPolynomial::term(1, pbw_->degree[idx]);
    return d;
}

LaurentPolynomial HnStructure::graded_dim_formula() const {
    LaurentPolynomial prod = LaurentPolynomial::one();
    LaurentPolynomial numer = LaurentPolynomial::one() - LaurentPolynomial::nu(fac_.n);
    for (long k = 0; k < fac_.t; ++k)
        prod *= numer.div_exact(LaurentPolynomial::one() - LaurentPolynomial::nu(fac_.n_k[k]));
    return prod;
}

namespace {
std::mutex structure_mutex;
std::map<long, StructurePtr>& structure_registry() {
    static std::map<long, StructurePtr> reg;
    return reg;
}
}  // namespace

StructurePtr HnStructure::make(long n) {
    {
        std::lock_guard<std::mutex> lock(structure_mutex);
        auto it = structure_registry().find(n);
        if (it != structure_registry().end()) return it->second;
    }
    StructurePtr s(new HnStructure(n));
    std::lock_guard<std::mutex> lock(structure_mutex);
    return structure_registry().emplace(n, std::move(s)).first->second;
}

}  // namespace oncat
