#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "oncat/scalar_field.hpp"
#include "oncat/structure.hpp"

namespace oncat {

/// The bosonization H_n x| kC_N on the PBW basis d^a K^i, 0 <= a_k < p_k,
/// 0 <= i < N, over the scalar field SF. Elements are sparse coefficient maps
/// keyed by the flat index a*N + i.
///
/// Algebra relations: K^N = 1, K d_k = xi_k d_k K, d_k^{p_k} = 0,
/// [d_k, d_l] = 0; the coproduct is determined by
/// Delta(d_k) = d_k (x) 1 + K^{n_k} (x) d_k and Delta(K) = K (x) K.
template <class SF>
class BosonizedAlgebra {
  public:
    using Value = typename SF::Value;
    using Element = std::map<long, Value>;             // flat key -> coefficient
    using TensorSquare = std::map<long, Value>;        // key1 * dim + key2
    using TensorCube = std::map<long, Value>;          // (key1 * dim + key2) * dim + key3

    BosonizedAlgebra(std::shared_ptr<const PbwTables> pbw, SF sf)
        : pbw_(std::move(pbw)), sf_(std::move(sf)) {
        const Factorization& f = pbw_->fac;
        if (sf_.N != f.N) throw std::invalid_argument("bosonization: scalar field has wrong N");
        m_ = f.m;
        N_ = f.N;
        build_coproduct_tables();
        build_antipode_tables();
    }

    const Factorization& fac() const { return pbw_->fac; }
    const PbwTables& pbw() const { return *pbw_; }
    const SF& scalars() const { return sf_; }
    long dim() const { return m_ * N_; }
    long d_monomials() const { return m_; }
    long flat(long a_idx, long k_exp) const { return a_idx * N_ + mod_N(k_exp); }
    long a_of(long key) const { return key / N_; }
    long k_of(long key) const { return key % N_; }

    Element zero() const { return {}; }
    Element unit() const { return monomial(0, 0); }
    Element monomial(long a_idx, long k_exp) const { return monomial(a_idx, k_exp, sf_.one()); }
    Element monomial(long a_idx, long k_exp, const Value& c) const {
        Element e;
        if (!SF::is_zero(c)) e.emplace(flat(a_idx, k_exp), c);
        return e;
    }
    /// Generator d_k (0-based k).
    Element d(int k) const {
        std::vector<int> a(fac().t, 0);
        a[k] = 1;
        return monomial(pbw_->pack(a), 0);
    }
    Element K(long exp = 1) const { return monomial(0, exp); }

    void add_to(Element& x, long key, const Value& c) const {
        if (SF::is_zero(c)) return;
        auto [it, inserted] = x.try_emplace(key, c);
        if (!inserted) {
            it->second = sf_.add(it->second, c);
            if (SF::is_zero(it->second)) x.erase(it);
        }
    }

    Element add(const Element& x, const Element& y) const {
        Element r = x;
        for (auto& [k, c] : y) add_to(r, k, c);
        return r;
    }

    Element scale(const Element& x, const Value& c) const {
        Element r;
        if (SF::is_zero(c)) return r;
        for (auto& [k, v] : x) {
            Value w = sf_.mul(v, c);
            if (!SF::is_zero(w)) r.emplace(k, w);
        }
        return r;
    }

    /// Monomial product: (d^a K^i)(d^b K^j) = q^{i deg(b)} d^{a+b} K^{i+j},
    /// zero when some a_k + b_k >= p_k.
    bool monomial_product(long key1, long key2, long& key_out, Value& coeff_out) const {
        long a1 = a_of(key1), i1 = k_of(key1);
        long a2 = a_of(key2), i2 = k_of(key2);
        long ab = pbw_->product[a1 * m_ + a2];
        if (ab < 0) return false;
        key_out = flat(ab, i1 + i2);
        coeff_out = sf_.q_power(i1 * pbw_->degree[a2]);
        return true;
    }

    Element multiply(const Element& x, const Element& y) const {
        Element r;
        long key;
        Value tw;
        for (auto& [k1, c1] : x)
            for (auto& [k2, c2] : y) {
                if (!monomial_product(k1, k2, key, tw)) continue;
                add_to(r, key, sf_.mul(sf_.mul(c1, c2), tw));
            }
        return r;
    }

    /// Coproduct term list of d^a (no K part): Delta(d^a) =
    /// sum_b coeff * d^b K^{deg(a-b)} (x) d^{a-b}.
    struct CoTerm {
        long b_idx;       // left d-part
        long rest_idx;    // right d-part, = a - b
        long w;           // K-exponent on the left leg, = deg(d^{a-b})
        Value coeff;      // prod_j binom[a_j, b_j] at xi_j^{n_j}
    };
    const std::vector<CoTerm>& coproduct_terms(long a_idx) const { return co_terms_[a_idx]; }

    long tensor_key(long key1, long key2) const { return key1 * dim() + key2; }

    /// Delta(d^a K^i), optionally with the K^{a-b} twist dropped from the left
    /// leg (a deliberately wrong coproduct used as a negative control).
    TensorSquare coproduct(const Element& x, bool drop_twist = false) const {
        TensorSquare r;
        for (auto& [key, c] : x) {
            long a = a_of(key), i = k_of(key);
            for (const CoTerm& t : co_terms_[a]) {
                long left = flat(t.b_idx, drop_twist ? i : t.w + i);
                long right = flat(t.rest_idx, i);
                long tk = tensor_key(left, right);
                Value v = sf_.mul(c, t.coeff);
                auto [it, inserted] = r.try_emplace(tk, v);
                if (!inserted) {
                    it->second = sf_.add(it->second, v);
                    if (SF::is_zero(it->second)) r.erase(it);
                }
            }
        }
        return r;
    }

    Value counit(const Element& x) const {
        Value e = sf_.zero();
        for (auto& [key, c] : x)
            if (a_of(key) == 0) e = sf_.add(e, c);
        return e;
    }

    /// S(d^a K^i) and S^{-1}(d^a K^i) are single monomials; tables are built
    /// by anti-homomorphic extension from the generator images.
    struct MonomialImage {
        long key;
        Value coeff;
    };
    const MonomialImage& antipode_monomial(long key) const { return antipode_[key]; }
    const MonomialImage& antipode_inv_monomial(long key) const { return antipode_inv_[key]; }

    Element antipode(const Element& x) const { return apply_table(x, antipode_); }
    Element antipode_inverse(const Element& x) const { return apply_table(x, antipode_inv_); }

    /// Left integral Lambda' = sum_i K^i d^{p-1} of the bosonization; in the
    /// normal form d^a K^i this is sum_i q^{i ell} d^{p-1} K^i.
    Element integral() const {
        Element r;
        const long ell = pbw_->degree[pbw_->top];
        for (long i = 0; i < N_; ++i) r.emplace(flat(pbw_->top, i), sf_.q_power(i * ell));
        return r;
    }
    /// Braided integral Lambda = d^{p-1} of H_n, homogeneous of degree ell.
    Element braided_integral() const { return monomial(pbw_->top, 0); }

    /// Tr(x * y) for x, y in the K-exponent-zero subalgebra H_n:
    /// the coefficient of d^{p-1} of the product. Inputs with a nonzero
    /// K-part are rejected.
    Value trace_pairing(const Element& x, const Element& y) const {
        for (auto& [key, c] : x)
            if (k_of(key) != 0) throw std::invalid_argument("trace_pairing: x has K-part");
        for (auto& [key, c] : y)
            if (k_of(key) != 0) throw std::invalid_argument("trace_pairing: y has K-part");
        Element prod = multiply(x, y);
        auto it = prod.find(flat(pbw_->top, 0));
        return it == prod.end() ? sf_.zero() : it->second;
    }

    /// Degree of a homogeneous element; throws if mixed. Degrees come from
    /// the d-part only (deg K = 0). Zero elements report degree 0.
    long degree_of(const Element& x) const {
        bool seen = false;
        long deg = 0;
        for (auto& [key, c] : x) {
            long d = pbw_->degree[a_of(key)];
            if (!seen) {
                deg = d;
                seen = true;
            } else if (d != deg) {
                throw std::domain_error("degree_of: element is not homogeneous");
            }
        }
        return deg;
    }

    std::string to_string(const Element& x) const {
        if (x.empty()) return "0";
        std::string s;
        for (auto& [key, c] : x) {
            if (!s.empty()) s += " + ";
            s += "(" + SF::str(c) + ")";
            long a = a_of(key), i = k_of(key);
            for (long k = 0; k < fac().t; ++k)
                for (int rep = 0; rep < pbw_->exponents[a][k]; ++rep)
                    s += "*d" + std::to_string(k + 1);
            if (i != 0) s += "*K^" + std::to_string(i);
        }
        return s;
    }

  private:
    long mod_N(long e) const {
        long r = e % N_;
        return r < 0 ? r + N_ : r;
    }

    Element apply_table(const Element& x, const std::vector<MonomialImage>& table) const {
        Element r;
        for (auto& [key, c] : x) {
            const MonomialImage& img = table[key];
            add_to(r, img.key, sf_.mul(c, img.coeff));
        }
        return r;
    }

    void build_coproduct_tables() {
        const Factorization& f = fac();
        // binom[k][a][b] = quantum binomial at xi_k^{n_k} = q^{n_k^2}.
        binom_.assign(f.t, {});
        for (long k = 0; k < f.t; ++k) {
            long p = f.primes[k].first;
            std::vector<Value> xpow;  // (xi_k^{n_k})^j
            for (long j = 0; j <= p; ++j) xpow.push_back(sf_.q_power(f.n_k[k] * f.n_k[k] * j));
            auto& rows = binom_[k];
            rows.assign(p + 1, std::vector<Value>(p + 1, sf_.zero()));
            rows[0][0] = sf_.one();
            for (long a = 1; a <= p; ++a) {
                rows[a][0] = sf_.one();
                rows[a][a] = sf_.one();
                for (long b = 1; b < a; ++b)
                    rows[a][b] = sf_.add(rows[a - 1][b - 1], sf_.mul(xpow[b], rows[a - 1][b]));
            }
        }
        co_terms_.assign(m_, {});
        for (long a = 0; a < m_; ++a) {
            const auto& ae = pbw_->exponents[a];
            std::vector<int> b(f.t, 0);
            // enumerate all componentwise b <= a
            while (true) {
                Value coeff = sf_.one();
                for (long k = 0; k < f.t; ++k) coeff = sf_.mul(coeff, binom_[k][ae[k]][b[k]]);
                std::vector<int> rest(f.t);
                for (long k = 0; k < f.t; ++k) rest[k] = ae[k] - b[k];
                long b_idx = pbw_->pack(b);
                long rest_idx = pbw_->pack(rest);
                co_terms_[a].push_back(CoTerm{b_idx, rest_idx, pbw_->degree[rest_idx], coeff});
                long k = 0;
                while (k < f.t && b[k] == ae[k]) b[k++] = 0;
                if (k == f.t) break;
                ++b[k];
            }
        }
    }

    void build_antipode_tables() {
        const Factorization& f = fac();
        antipode_.resize(dim());
        antipode_inv_.resize(dim());
        // Generator images: S(K) = K^{-1}, S(d_k) = -K^{-n_k} d_k,
        //                   S^{-1}(K) = K^{-1}, S^{-1}(d_k) = -d_k K^{-n_k}.
        std::vector<Element> s_d, si_d;
        for (long k = 0; k < f.t; ++k) {
            std::vector<int> a(f.t, 0);
            a[k] = 1;
            long ak = pbw_->pack(a);
            s_d.push_back(scale(monomial(ak, -f.n_k[k]), sf_.neg(sf_.q_power(-f.n_k[k] * f.n_k[k]))));
            // -K^{-n_k} d_k rewritten in normal form d_k K^{-n_k} times q^{-n_k^2}
            si_d.push_back(scale(monomial(ak, -f.n_k[k]), sf_.neg(sf_.one())));
        }
        for (long a = 0; a < m_; ++a) {
            for (long i = 0; i < N_; ++i) {
                long key = flat(a, i);
                // Anti-homomorphism: S(d^a K^i) = S(K)^i S(d_t)^{a_t} ... S(d_1)^{a_1}.
                Element acc = K(-i);
                for (long k = f.t - 1; k >= 0; --k)
                    for (int rep = 0; rep < pbw_->exponents[a][k]; ++rep) acc = multiply(acc, s_d[k]);
                antipode_[key] = to_monomial(acc);
                Element acc2 = K(-i);
                for (long k = f.t - 1; k >= 0; --k)
                    for (int rep = 0; rep < pbw_->exponents[a][k]; ++rep)
                        acc2 = multiply(acc2, si_d[k]);
                antipode_inv_[key] = to_monomial(acc2);
            }
        }
        // S(S^{-1}(x)) = x spot check on generators.
        for (long k = 0; k < f.t; ++k) {
            Element via = antipode(antipode_inverse(d(static_cast<int>(k))));
            if (via != d(static_cast<int>(k)))
                throw std::logic_error("bosonization: S(S^{-1}(d_k)) != d_k");
        }
    }

    MonomialImage to_monomial(const Element& x) const {
        if (x.size() != 1) throw std::logic_error("bosonization: expected monomial image");
        return MonomialImage{x.begin()->first, x.begin()->second};
    }

    std::shared_ptr<const PbwTables> pbw_;
    SF sf_;
    long m_ = 0;
    long N_ = 0;
    std::vector<std::vector<CoTerm>> co_terms_;
    std::vector<std::vector<std::vector<Value>>> binom_;
    std::vector<MonomialImage> antipode_;
    std::vector<MonomialImage> antipode_inv_;
};

using BosonizedAlgebraQ = BosonizedAlgebra<CycScalarField>;
using BosonizedAlgebraFp = BosonizedAlgebra<FpScalarField>;

/// Bosonization of H_n over Q(zeta_N) built from the shared structure.
BosonizedAlgebraQ make_bosonization(const StructurePtr& s);

/// Memoized per-structure char-0 bosonization (one shared instance per n).
const BosonizedAlgebraQ& bosonization_for(const StructurePtr& s);

}  // namespace oncat
