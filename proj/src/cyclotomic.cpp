#include "oncat/cyclotomic.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "oncat/factorization.hpp"

namespace oncat {

namespace {

std::mutex field_mutex;
std::map<long, std::shared_ptr<const CyclotomicField>>& field_registry() {
    static std::map<long, std::shared_ptr<const CyclotomicField>> reg;
    return reg;
}

}  // namespace

CyclotomicField::CyclotomicField(long N) : N_(N) {
    const LaurentPolynomial& phi = cyclotomic_polynomial(N);
    phi_ = phi.max_exp();
    modulus_.assign(phi_ + 1, 0);
    for (auto& [e, c] : phi.coeffs()) modulus_[e] = c;

    // zeta^e for e in [0, N): exact integer coordinates since Phi_N is monic.
    zeta_pow_.assign(N_, {});
    for (long e = 0; e < N_ && e < phi_; ++e) {
        std::vector<mpz_class> v(phi_, 0);
        v[e] = 1;
        zeta_pow_[e] = std::move(v);
    }
    for (long e = phi_; e < N_; ++e) {
        // zeta^e = zeta * zeta^{e-1}, reduced by the monic modulus.
        std::vector<mpz_class> v(phi_ + 1, 0);
        const auto& prev = zeta_pow_[e - 1];
        for (long i = 0; i < phi_; ++i) v[i + 1] = prev[i];
        const mpz_class& top = v[phi_];
        if (top != 0) {
            for (long i = 0; i < phi_; ++i) v[i] -= top * modulus_[i];
        }
        v.resize(phi_);
        zeta_pow_[e] = std::move(v);
    }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(long N) {
    if (N < 1) throw std::invalid_argument("CyclotomicField: N must be positive");
    {
        std::lock_guard<std::mutex> lock(field_mutex);
        auto it = field_registry().find(N);
        if (it != field_registry().end()) return it->second;
    }
    std::shared_ptr<const CyclotomicField> f(new CyclotomicField(N));
    std::lock_guard<std::mutex> lock(field_mutex);
    return field_registry().emplace(N, std::move(f)).first->second;
}

const std::vector<mpz_class>& CyclotomicField::power_coords(long e) const {
    long r = e % N_;
    if (r < 0) r += N_;
    return zeta_pow_[r];
}

CyclotomicNumber::CyclotomicNumber(std::shared_ptr<const CyclotomicField> field)
    : field_(std::move(field)), coords_(field_->degree(), mpq_class(0)) {}

CyclotomicNumber::CyclotomicNumber(std::shared_ptr<const CyclotomicField> field, const mpq_class& r)
    : field_(std::move(field)), coords_(field_->degree(), mpq_class(0)) {
    coords_[0] = r;
}

CyclotomicNumber CyclotomicNumber::zeta_power(const std::shared_ptr<const CyclotomicField>& f, long e) {
    CyclotomicNumber x(f);
    const auto& v = f->power_coords(e);
    for (size_t i = 0; i < v.size(); ++i) x.coords_[i] = v[i];
    return x;
}

void CyclotomicNumber::check_same_field(const CyclotomicNumber& o) const {
    if (!field_ || !o.field_ || field_->conductor() != o.field_->conductor())
        throw std::invalid_argument("cyclotomic numbers from different fields");
}

bool CyclotomicNumber::is_zero() const {
    for (auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicNumber::is_one() const {
    if (coords_[0] != 1) return false;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

bool CyclotomicNumber::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

mpq_class CyclotomicNumber::rational_value() const {
    if (!is_rational()) throw std::domain_error("not a rational cyclotomic number");
    return coords_[0];
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
    CyclotomicNumber r = *this;
    r += o;
    return r;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
    CyclotomicNumber r = *this;
    r -= o;
    return r;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
    check_same_field(o);
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
    check_same_field(o);
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
    check_same_field(o);
    const long phi = field_->degree();
    std::vector<mpq_class> conv(2 * phi - 1, mpq_class(0));
    for (long i = 0; i < phi; ++i) {
        if (coords_[i] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (o.coords_[j] == 0) continue;
            conv[i + j] += coords_[i] * o.coords_[j];
        }
    }
    CyclotomicNumber r(field_);
    for (long e = 2 * phi - 2; e >= phi; --e) {
        if (conv[e] == 0) continue;
        const auto& red = field_->power_coords(e);
        for (long i = 0; i < phi; ++i) {
            if (red[i] != 0) conv[i] += conv[e] * red[i];
        }
    }
    for (long i = 0; i < phi; ++i) r.coords_[i] = conv[i];
    return r;
}

CyclotomicNumber CyclotomicNumber::operator*(const mpq_class& c) const {
    CyclotomicNumber r = *this;
    for (auto& a : r.coords_) a *= c;
    return r;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
    *this = *this * o;
    return *this;
}

void CyclotomicNumber::add_mul(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    *this += a * b;
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
    check_same_field(o);
    return coords_ == o.coords_;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    const long phi = field_->degree();
    if (phi == 1) {
        CyclotomicNumber r(field_);
        r.coords_[0] = 1 / coords_[0];
        return r;
    }
    // Extended Euclid over Q[x] for (this, Phi_N): since Phi_N is irreducible
    // the gcd is a nonzero constant c with  u*this + v*Phi = c.
    using QP = std::vector<mpq_class>;
    auto deg = [](const QP& p) {
        for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1L;
    };
    QP r0(field_->modulus().size());
    for (size_t i = 0; i < field_->modulus().size(); ++i) r0[i] = field_->modulus()[i];
    QP r1(coords_.begin(), coords_.end());
    QP u0{mpq_class(0)}, u1{mpq_class(1)};  // Bezout coefficients of the second argument
    long d1 = deg(r1);
    long d0 = deg(r0);
    while (d1 > 0) {
        // r0 = q*r1 + r2
        QP q(d0 - d1 + 1, mpq_class(0));
        QP r2 = r0;
        for (long e = d0 - d1; e >= 0; --e) {
            mpq_class c = r2[e + d1] / r1[d1];
            if (c == 0) continue;
            q[e] = c;
            for (long i = 0; i <= d1; ++i) r2[e + i] -= c * r1[i];
        }
        // u2 = u0 - q*u1
        QP u2 = u0;
        u2.resize(std::max(u0.size(), q.size() + u1.size()), mpq_class(0));
        for (size_t a = 0; a < q.size(); ++a) {
            if (q[a] == 0) continue;
            for (size_t b = 0; b < u1.size(); ++b) u2[a + b] -= q[a] * u1[b];
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        d0 = deg(r0);
        d1 = deg(r1);
    }
    if (d1 < 0) throw std::domain_error("inverse: zero divisor (modulus not coprime)");
    // r1 is a nonzero constant: inverse = u1 / r1 reduced into the power basis.
    CyclotomicNumber r(field_);
    std::vector<mpq_class> padded(u1.begin(), u1.end());
    padded.resize(std::max<size_t>(padded.size(), phi), mpq_class(0));
    // u1 has degree < deg(Phi) by construction of the Euclid chain.
    for (long i = 0; i < phi; ++i) r.coords_[i] = padded[i] / r1[0];
    return r;
}

CyclotomicNumber CyclotomicNumber::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CyclotomicNumber base = *this;
    CyclotomicNumber acc = CyclotomicNumber::one(field_);
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1) acc *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return acc;
}

std::string CyclotomicNumber::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t e = 0; e < coords_.size(); ++e) {
        const mpq_class& c = coords_[e];
        if (c == 0) continue;
        mpq_class a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

CyclotomicNumber CyclotomicNumber::parse(const std::shared_ptr<const CyclotomicField>& f,
                                         const std::string& text, const std::string& var) {
    CyclotomicNumber result(f);
    size_t i = 0;
    const std::string& s = text;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto read_uint = [&](mpz_class& out) {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) return false;
        out = mpz_class(s.substr(start, i - start));
        return true;
    };
    bool any = false;
    while (true) {
        skip_ws();
        if (i >= s.size()) break;
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
            skip_ws();
        }
        mpz_class num;
        mpq_class coeff(1);
        bool have_coeff = read_uint(num);
        if (have_coeff) {
            skip_ws();
            if (i < s.size() && s[i] == '/') {
                ++i;
                mpz_class den;
                if (!read_uint(den) || den == 0)
                    throw std::invalid_argument("parse: malformed rational");
                coeff = mpq_class(num) / mpq_class(den);
            } else {
                coeff = mpq_class(num);
            }
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') ++i;
        skip_ws();
        long exp = 0;
        if (s.compare(i, var.size(), var) == 0) {
            i += var.size();
            exp = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                int esign = 1;
                if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                    if (s[i] == '-') esign = -1;
                    ++i;
                }
                mpz_class e;
                if (!read_uint(e)) throw std::invalid_argument("parse: exponent expected");
                exp = esign * e.get_si();
            }
        } else if (!have_coeff) {
            throw std::invalid_argument("parse: malformed term in '" + text + "'");
        }
        if (sign < 0) coeff = -coeff;
        result += CyclotomicNumber::zeta_power(f, exp) * coeff;
        any = true;
    }
    if (!any) throw std::invalid_argument("parse: empty input");
    return result;
}

CyclotomicNumber root_of_unity(long N) { return CyclotomicNumber::zeta_power(CyclotomicField::get(N), 1); }

bool is_primitive_root(const CyclotomicNumber& x, long N) {
    if (!x.pow(N).is_one()) return false;
    Factorization f = factorize(N);
    for (auto& [p, a] : f.primes)
        if (x.pow(N / p).is_one()) return false;
    return true;
}

CyclotomicNumber evaluate(const LaurentPolynomial& p, const CyclotomicNumber& x) {
    CyclotomicNumber acc = CyclotomicNumber::zero(x.field());
    if (p.is_zero()) return acc;
    // Nonnegative part by Horner from the top; negative part by Horner in 1/x.
    CyclotomicNumber xinv = CyclotomicNumber::zero(x.field());
    bool have_inv = false;
    long prev = 0;
    bool started = false;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        auto [e, c] = *it;
        if (e < 0) break;
        if (started) acc *= x.pow(prev - e);
        CyclotomicNumber term(x.field(), mpq_class(c));
        acc += term;
        prev = e;
        started = true;
    }
    if (started && prev > 0) acc *= x.pow(prev);
    CyclotomicNumber negacc = CyclotomicNumber::zero(x.field());
    bool neg_started = false;
    long nprev = 0;
    for (auto& [e, c] : p.coeffs()) {
        if (e >= 0) break;
        if (!have_inv) {
            xinv = x.inverse();
            have_inv = true;
        }
        if (neg_started) negacc *= xinv.pow(e - nprev);
        negacc += CyclotomicNumber(x.field(), mpq_class(c));
        nprev = e;
        neg_started = true;
    }
    if (neg_started) {
        negacc *= xinv.pow(-nprev);
        acc += negacc;
    }
    return acc;
}

}  // namespace oncat
