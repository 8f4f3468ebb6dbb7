#include "oncat/laurent.hpp"

#include <cctype>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "oncat/factorization.hpp"

namespace oncat {

LaurentPolynomial LaurentPolynomial::term(const mpz_class& c, long e) {
    LaurentPolynomial p;
    p.set_coeff(e, c);
    return p;
}

bool LaurentPolynomial::is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 && coeffs_.begin()->second == 1;
}

mpz_class LaurentPolynomial::coeff(long e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? mpz_class(0) : it->second;
}

void LaurentPolynomial::set_coeff(long e, const mpz_class& c) {
    if (c == 0)
        coeffs_.erase(e);
    else
        coeffs_[e] = c;
}

long LaurentPolynomial::max_exp() const {
    if (is_zero()) throw std::domain_error("max_exp of zero polynomial");
    return coeffs_.rbegin()->first;
}

long LaurentPolynomial::min_exp() const {
    if (is_zero()) throw std::domain_error("min_exp of zero polynomial");
    return coeffs_.begin()->first;
}

const mpz_class& LaurentPolynomial::leading_coeff() const {
    if (is_zero()) throw std::domain_error("leading_coeff of zero polynomial");
    return coeffs_.rbegin()->second;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
    for (auto& [e, c] : o.coeffs_) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
    for (auto& [e, c] : o.coeffs_) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }
    return *this;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    r += o;
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    r -= o;
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial r;
    for (auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
    return r;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial r;
    for (auto& [e1, c1] : coeffs_)
        for (auto& [e2, c2] : o.coeffs_) {
            auto it = r.coeffs_.find(e1 + e2);
            if (it == r.coeffs_.end()) {
                r.coeffs_.emplace(e1 + e2, c1 * c2);
            } else {
                it->second += c1 * c2;
                if (it->second == 0) r.coeffs_.erase(it);
            }
        }
    return r;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& o) {
    *this = *this * o;
    return *this;
}

LaurentPolynomial LaurentPolynomial::operator*(const mpz_class& c) const {
    LaurentPolynomial r;
    if (c == 0) return r;
    for (auto& [e, a] : coeffs_) r.coeffs_.emplace(e, a * c);
    return r;
}

LaurentPolynomial operator*(const mpz_class& c, const LaurentPolynomial& p) { return p * c; }

LaurentPolynomial LaurentPolynomial::shifted(long e) const {
    LaurentPolynomial r;
    for (auto& [e1, c] : coeffs_) r.coeffs_.emplace(e1 + e, c);
    return r;
}

void LaurentPolynomial::sub_scaled_shifted(const LaurentPolynomial& b, const mpz_class& c, long e) {
    if (c == 0) return;
    for (auto& [eb, cb] : b.coeffs_) {
        auto [it, inserted] = coeffs_.try_emplace(eb + e, 0);
        mpz_submul(it->second.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
        if (it->second == 0) coeffs_.erase(it);
    }
}

void LaurentPolynomial::scale(const mpz_class& c) {
    if (c == 0) {
        coeffs_.clear();
        return;
    }
    if (c == 1) return;
    for (auto& [e, a] : coeffs_) a *= c;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned long k) const {
    LaurentPolynomial r = one();
    LaurentPolynomial base = *this;
    while (k > 0) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

LaurentPolynomial LaurentPolynomial::substitute_power(long s) const {
    if (s == 0) throw std::invalid_argument("substitute_power: s must be nonzero");
    LaurentPolynomial r;
    for (auto& [e, c] : coeffs_) r.coeffs_.emplace(e * s, c);
    return r;
}

LaurentPolynomial LaurentPolynomial::div_exact(const LaurentPolynomial& divisor) const {
    auto q = try_div(divisor);
    if (!q) throw std::domain_error("div_exact: division is not exact");
    return *q;
}

std::optional<LaurentPolynomial> LaurentPolynomial::try_div(const LaurentPolynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return LaurentPolynomial();
    LaurentPolynomial q;
    LaurentPolynomial r = *this;
    const long dtop = divisor.max_exp();
    const mpz_class& dlc = divisor.leading_coeff();
    // An exact Laurent quotient has minimum exponent exactly this low; once a
    // division step would need a lower one, the division is not exact.
    const long qmin = min_exp() - divisor.min_exp();
    while (!r.is_zero()) {
        long e = r.max_exp() - dtop;
        if (e < qmin) return std::nullopt;
        const mpz_class& rlc = r.coeffs().rbegin()->second;
        mpz_class c = rlc / dlc;
        if (c * dlc != rlc) return std::nullopt;
        q.set_coeff(e, c);
        r.sub_scaled_shifted(divisor, c, e);
    }
    return q;
}

bool LaurentPolynomial::divisible_by(const LaurentPolynomial& divisor) const {
    return try_div(divisor).has_value();
}

mpz_class LaurentPolynomial::content() const {
    mpz_class g = 0;
    for (auto& [e, c] : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

LaurentPolynomial LaurentPolynomial::normalized() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (leading_coeff() < 0) g = -g;
    long shift = -min_exp();
    LaurentPolynomial r;
    for (auto& [e, c] : coeffs_) r.coeffs_.emplace(e + shift, mpz_class(c / g));
    return r;
}

mpz_class LaurentPolynomial::eval_int(const mpz_class& x) const {
    if (is_zero()) return mpz_class(0);
    if (min_exp() < 0) throw std::domain_error("eval_int: negative exponents");
    // Horner on the sparse support, highest exponent first.
    auto it = coeffs_.rbegin();
    mpz_class acc = it->second;
    long prev = it->first;
    mpz_class xp;
    for (++it; it != coeffs_.rend(); ++it) {
        mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(prev - it->first));
        acc *= xp;
        acc += it->second;
        prev = it->first;
    }
    if (prev > 0) {
        mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(prev));
        acc *= xp;
    }
    return acc;
}

std::string LaurentPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : coeffs_) {
        mpz_class a = c;
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

namespace {

// Shared term scanner for "c*x^e" style text; accepts an optional '*' and
// bare variables/constants. Returns false at end of input.
struct TermScanner {
    const std::string& s;
    const std::string& var;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    bool at_end() {
        skip_ws();
        return i >= s.size();
    }

    int read_sign() {
        skip_ws();
        int sign = 1;
        while (!at_end() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
            skip_ws();
        }
        return sign;
    }

    bool read_integer(mpz_class& out) {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) {
            i = start;
            return false;
        }
        out = mpz_class(s.substr(start, i - start));
        return true;
    }

    bool read_var() {
        skip_ws();
        if (s.compare(i, var.size(), var) == 0) {
            i += var.size();
            return true;
        }
        return false;
    }
};

}  // namespace

LaurentPolynomial LaurentPolynomial::parse(const std::string& text, const std::string& var) {
    LaurentPolynomial result;
    TermScanner sc{text, var};
    bool any = false;
    while (!sc.at_end()) {
        int sign = sc.read_sign();
        mpz_class coeff = 1;
        bool have_coeff = sc.read_integer(coeff);
        sc.skip_ws();
        if (sc.i < sc.s.size() && sc.s[sc.i] == '*') ++sc.i;
        long exp = 0;
        if (sc.read_var()) {
            exp = 1;
            sc.skip_ws();
            if (sc.i < sc.s.size() && sc.s[sc.i] == '^') {
                ++sc.i;
                mpz_class e;
                if (!sc.read_integer(e)) throw std::invalid_argument("parse: exponent expected");
                exp = e.get_si();
            }
        } else if (!have_coeff) {
            throw std::invalid_argument("parse: malformed term in '" + text + "'");
        }
        result += term(sign * coeff, exp);
        any = true;
    }
    if (!any && !text.empty()) {
        // all-whitespace input is treated as malformed, an explicit "0" parses
        TermScanner chk{text, var};
        if (chk.at_end()) throw std::invalid_argument("parse: empty input");
    }
    return result;
}

LaurentPolynomial q_integer(long a) {
    if (a < 0) throw std::invalid_argument("q_integer: a must be nonnegative");
    LaurentPolynomial p;
    for (long j = 0; j < a; ++j) p.set_coeff(j, 1);
    return p;
}

LaurentPolynomial quantum_binomial(long a, long b) {
    if (b < 0 || b > a) throw std::invalid_argument("quantum_binomial: need 0 <= b <= a");
    // Pascal recursion [a,b] = [a-1,b-1] + v^b [a-1,b], row by row.
    std::vector<LaurentPolynomial> row{LaurentPolynomial::one()};
    for (long i = 1; i <= a; ++i) {
        std::vector<LaurentPolynomial> next(i + 1);
        next[0] = LaurentPolynomial::one();
        next[i] = LaurentPolynomial::one();
        for (long j = 1; j < i; ++j) next[j] = row[j - 1] + row[j].shifted(j);
        row = std::move(next);
    }
    return row[b];
}

namespace {

std::mutex cyclo_mutex;
std::map<long, LaurentPolynomial>& cyclo_cache() {
    static std::map<long, LaurentPolynomial> cache;
    return cache;
}

LaurentPolynomial compute_cyclotomic(long n) {
    if (n == 1) return LaurentPolynomial::nu(1) - LaurentPolynomial::one();
    long p = factorize(n).primes.front().first;
    long np = n / p;
    // (v^n - 1) / (v^{n/p} - 1) first; this removes every Phi_d with d | n/p.
    LaurentPolynomial r = (LaurentPolynomial::nu(n) - LaurentPolynomial::one())
                              .div_exact(LaurentPolynomial::nu(np) - LaurentPolynomial::one());
    for (long d = 1; d < n; ++d) {
        if (n % d != 0 || np % d == 0) continue;
        r = r.div_exact(cyclotomic_polynomial(d));
    }
    return r;
}

}  // namespace

const LaurentPolynomial& cyclotomic_polynomial(long n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    {
        std::lock_guard<std::mutex> lock(cyclo_mutex);
        auto it = cyclo_cache().find(n);
        if (it != cyclo_cache().end()) return it->second;
    }
    LaurentPolynomial value = compute_cyclotomic(n);
    std::lock_guard<std::mutex> lock(cyclo_mutex);
    return cyclo_cache().emplace(n, std::move(value)).first->second;
}

namespace {

// Pseudo-remainder of min-exponent-zero polynomials.
LaurentPolynomial pseudo_rem(LaurentPolynomial a, const LaurentPolynomial& b) {
    const long db = b.max_exp();
    const mpz_class& lb = b.leading_coeff();
    const bool monic = (lb == 1);
    while (!a.is_zero() && a.max_exp() >= db) {
        long e = a.max_exp() - db;
        mpz_class la = a.leading_coeff();  // taken before the scaling step
        if (!monic) a.scale(lb);
        a.sub_scaled_shifted(b, la, e);
    }
    return a;
}

}  // namespace

LaurentPolynomial gcd_normalized(LaurentPolynomial a, LaurentPolynomial b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    a = a.normalized();
    b = b.normalized();
    if (a.max_exp() < b.max_exp()) std::swap(a, b);
    while (!b.is_zero()) {
        LaurentPolynomial r = pseudo_rem(a, b).normalized();
        a = std::move(b);
        b = std::move(r);
    }
    return a.normalized();
}

namespace {

// The gcd and prime-substitution identities only depend on the radical m, so
// cache the verdicts per radical across the n-sweep in the acceptance suite.
std::mutex radical_mutex;
std::map<long, std::pair<bool, bool>>& radical_cache() {
    static std::map<long, std::pair<bool, bool>> cache;
    return cache;
}

std::pair<bool, bool> verify_radical_identities(const Factorization& f) {
    {
        std::lock_guard<std::mutex> lock(radical_mutex);
        auto it = radical_cache().find(f.m);
        if (it != radical_cache().end()) return it->second;
    }
    const long m = f.m;
    std::vector<LaurentPolynomial> strings;  // [m]/[m/p_k]
    for (long k = 0; k < f.t; ++k) strings.push_back(q_integer(m).div_exact(q_integer(f.m_k[k])));

    bool prime_sub = true;
    for (long k = 0; k < f.t; ++k) {
        LaurentPolynomial sub = cyclotomic_polynomial(f.p(k)).substitute_power(f.m_k[k]);
        if (sub != strings[k]) prime_sub = false;
    }

    LaurentPolynomial g = strings[0].normalized();
    for (long k = 1; k < f.t; ++k) g = gcd_normalized(g, strings[k]);
    bool gcd_id = (g == cyclotomic_polynomial(m));

    std::lock_guard<std::mutex> lock(radical_mutex);
    return radical_cache().emplace(m, std::make_pair(gcd_id, prime_sub)).first->second;
}

}  // namespace

CyclotomicIdentityReport verify_cyclotomic_identities(long n) {
    if (n < 2) throw std::invalid_argument("verify_cyclotomic_identities: n >= 2 required");
    CyclotomicIdentityReport rep;
    rep.n = n;
    Factorization f = factorize(n);
    auto [gcd_id, prime_sub] = verify_radical_identities(f);
    rep.gcd_identity = gcd_id;
    rep.prime_substitution = prime_sub;
    rep.radical_substitution =
        (cyclotomic_polynomial(n) == cyclotomic_polynomial(f.m).substitute_power(n / f.m));
    return rep;
}

}  // namespace oncat
