#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_d) = Q[z]/(Phi_d).

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qtorus {

using Integer = mpz_class;
using Rational = mpq_class;

// gmpxx has no long long overloads; long is 64-bit on the supported platforms.
inline Integer to_integer(long long x) { return Integer(static_cast<long>(x)); }
inline Rational to_rational(long long x) { return Rational(static_cast<long>(x)); }

namespace detail {

// Dense univariate polynomials over Q, coefficient k is the z^k coefficient.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// Euclidean division a = q*b + r with deg r < deg b. b must be nonzero.
inline void poly_divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    const Rational& lead = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        Rational f = a.back() / lead;
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    r = std::move(a);
}

}  // namespace detail

/// Phi_d with integer coefficients, low degree first. Computed by dividing z^d - 1
/// by Phi_e for every proper divisor e of d.
inline std::vector<Integer> cyclotomic_polynomial(int d) {
    if (d < 1) throw std::invalid_argument("cyclotomic_polynomial: d must be >= 1");
    static std::mutex mutex;
    static std::map<int, std::vector<Integer>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(d); it != cache.end()) return it->second;
    }
    detail::QPoly num(static_cast<std::size_t>(d) + 1, Rational(0));
    num[0] = -1;
    num[static_cast<std::size_t>(d)] = 1;
    for (int e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        auto pe = cyclotomic_polynomial(e);
        detail::QPoly div(pe.begin(), pe.end());
        detail::QPoly q, r;
        detail::poly_divmod(num, div, q, r);
        if (!r.empty()) throw std::logic_error("cyclotomic_polynomial: inexact division");
        num = std::move(q);
    }
    std::vector<Integer> out;
    out.reserve(num.size());
    for (auto& c : num) {
        if (c.get_den() != 1) throw std::logic_error("cyclotomic_polynomial: non-integral coefficient");
        out.push_back(c.get_num());
    }
    std::lock_guard lock(mutex);
    cache.emplace(d, out);
    return out;
}

/// The field Q(zeta_d). Instances are interned and live for the whole program, so
/// elements can refer to them by pointer.
class CyclotomicField {
public:
    static const CyclotomicField* get(int d) {
        static std::mutex mutex;
        static std::map<int, std::unique_ptr<CyclotomicField>> fields;
        std::lock_guard lock(mutex);
        auto& slot = fields[d];
        if (!slot) slot.reset(new CyclotomicField(d));
        return slot.get();
    }

    int order() const noexcept { return d_; }
    /// Degree phi(d) of the extension.
    int degree() const noexcept { return static_cast<int>(phi_.size()) - 1; }
    const detail::QPoly& modulus() const noexcept { return phi_; }

    /// Reduces a polynomial in z modulo Phi_d in place, leaving exactly degree() coefficients.
    void reduce(detail::QPoly& p) const {
        const std::size_t deg = static_cast<std::size_t>(degree());
        for (std::size_t k = p.size(); k-- > deg;) {
            if (p[k] == 0) continue;
            Rational f = p[k];
            for (std::size_t i = 0; i <= deg; ++i) p[k - deg + i] -= f * phi_[i];
        }
        p.resize(deg, Rational(0));
    }

private:
    explicit CyclotomicField(int d) : d_(d) {
        auto c = cyclotomic_polynomial(d);
        phi_.assign(c.begin(), c.end());
    }

    int d_;
    detail::QPoly phi_;
};

/// An element of Q(zeta_d), stored as the coefficient vector of its reduced residue.
class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(const CyclotomicField* field, Rational value = 0)
        : field_(field), c_(static_cast<std::size_t>(field->degree()), Rational(0)) {
        c_[0] = std::move(value);
    }

    /// zeta_d^k for any integer k.
    static Cyclotomic zeta_power(const CyclotomicField* field, long long k) {
        const long long d = field->order();
        long long e = ((k % d) + d) % d;
        detail::QPoly p(static_cast<std::size_t>(e) + 1, Rational(0));
        p[static_cast<std::size_t>(e)] = 1;
        field->reduce(p);
        Cyclotomic out;
        out.field_ = field;
        out.c_ = std::move(p);
        return out;
    }

    const CyclotomicField* field() const noexcept { return field_; }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    /// True when the element lies in Q.
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Cyclotomic& operator*=(const Rational& r) {
        for (auto& x : c_) x *= r;
        return *this;
    }
    Cyclotomic& operator*=(const Cyclotomic& o) {
        check(o);
        if (c_.size() == 1) {
            c_[0] *= o.c_[0];
            return *this;
        }
        detail::QPoly p(2 * c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                if (o.c_[j] != 0) p[i + j] += c_[i] * o.c_[j];
        }
        field_->reduce(p);
        c_ = std::move(p);
        return *this;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_d.
    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("Cyclotomic::inverse: division by zero");
        if (is_rational()) {
            Cyclotomic r = *this;
            r.c_[0] = 1 / c_[0];
            return r;
        }
        using detail::QPoly;
        QPoly r0 = field_->modulus(), r1 = c_;
        detail::trim(r1);
        QPoly s0, s1{Rational(1)};
        while (!r1.empty() && r1.size() > 1) {
            QPoly q, rem;
            detail::poly_divmod(r0, r1, q, rem);
            QPoly s2 = detail::poly_sub(s0, detail::poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // Phi_d is irreducible, so the final remainder is a nonzero constant.
        if (r1.empty()) throw std::logic_error("Cyclotomic::inverse: modulus not irreducible");
        Rational f = 1 / r1[0];
        for (auto& x : s1) x *= f;
        field_->reduce(s1);
        Cyclotomic out;
        out.field_ = field_;
        out.c_ = std::move(s1);
        return out;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

    /// Numerical value under zeta_d -> exp(2 pi i / d).
    std::complex<double> evaluate() const {
        std::complex<double> acc = 0;
        const double d = field_->order();
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / d;
            acc += c_[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return acc;
    }

    /// Renders as a polynomial in z = zeta_d, e.g. "1 - 2/3*z^2".
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            const Rational& x = c_[k];
            if (x == 0) continue;
            Rational mag = abs(x);
            if (first) {
                if (x < 0) os << "-";
            } else {
                os << (x < 0 ? " - " : " + ");
            }
            first = false;
            if (k == 0) {
                os << mag.get_str();
            } else {
                if (mag != 1) os << mag.get_str() << "*";
                os << "z";
                if (k > 1) os << "^" << k;
            }
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void check(const Cyclotomic& o) const {
        if (field_ != o.field_) throw std::invalid_argument("Cyclotomic: mismatched fields");
    }

    const CyclotomicField* field_ = nullptr;
    std::vector<Rational> c_;
};

}  // namespace qtorus
