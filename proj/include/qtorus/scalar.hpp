#pragma once

// CoeffScalar: elements of F = Q(zeta_d)(u_1, ..., u_s), the exact coefficient field.
//
// Canonical form: u^shift * num / den where num and den are polynomials with no
// monomial factor, gcd(num, den) = 1 and den has lex-leading coefficient 1. Zero
// is num = 0, den = 1, shift = 0. Canonical form makes equality structural.

#include <complex>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "mpoly.hpp"

namespace qtorus {

/// Identifies the coefficient field: the cyclotomic order d and the number s of
/// formal transcendentals.
struct FieldSpec {
    const CyclotomicField* cyclo = nullptr;
    int s = 0;

    static FieldSpec make(int d, int s) { return {CyclotomicField::get(d), s}; }
    int d() const { return cyclo->order(); }
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class CoeffScalar {
public:
    CoeffScalar() = default;
    explicit CoeffScalar(FieldSpec f, const Rational& value = 0)
        : field_(f),
          shift_(static_cast<std::size_t>(f.s), 0),
          num_(MPoly::constant(f.cyclo, f.s, Cyclotomic(f.cyclo, value))),
          den_(one_poly(f)) {}

    static CoeffScalar zero(FieldSpec f) { return CoeffScalar(f, 0); }
    static CoeffScalar one(FieldSpec f) { return CoeffScalar(f, 1); }

    /// c * zeta_d^k * u^m.
    static CoeffScalar monomial(FieldSpec f, long long k, const std::vector<long long>& m,
                                const Rational& c = 1) {
        if (static_cast<int>(m.size()) != f.s)
            throw std::invalid_argument("CoeffScalar::monomial: exponent length mismatch");
        CoeffScalar x(f);
        if (c == 0) return x;
        Cyclotomic z = Cyclotomic::zeta_power(f.cyclo, k);
        z *= c;
        for (std::size_t t = 0; t < m.size(); ++t) x.shift_[t] = static_cast<int>(m[t]);
        x.num_ = MPoly::constant(f.cyclo, f.s, z);
        return x;
    }
    static CoeffScalar from_cyclotomic(FieldSpec f, const Cyclotomic& c) {
        CoeffScalar x(f);
        x.num_ = MPoly::constant(f.cyclo, f.s, c);
        return x;
    }
    /// Builds num/den and canonicalizes.
    static CoeffScalar fraction(FieldSpec f, MPoly num, MPoly den) {
        CoeffScalar x(f);
        x.num_ = std::move(num);
        x.den_ = std::move(den);
        x.normalize();
        return x;
    }

    const FieldSpec& field() const noexcept { return field_; }
    const MPoly& numerator() const noexcept { return num_; }
    const MPoly& denominator() const noexcept { return den_; }
    const Exponent& shift() const noexcept { return shift_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const {
        if (!den_.is_constant() || !num_.is_constant()) return false;
        for (int e : shift_)
            if (e != 0) return false;
        return num_.constant_term().is_one();
    }
    /// A unit of the Laurent ring Q(zeta_d)[u^{+-1}]: a single term over a constant.
    bool is_laurent_unit() const { return num_.size() == 1 && den_.is_constant(); }

    CoeffScalar operator-() const {
        CoeffScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend CoeffScalar operator+(const CoeffScalar& a, const CoeffScalar& b) {
        a.check(b);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        Exponent m(a.shift_.size());
        Exponent da(m.size()), db(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            m[i] = std::min(a.shift_[i], b.shift_[i]);
            da[i] = a.shift_[i] - m[i];
            db[i] = b.shift_[i] - m[i];
        }
        CoeffScalar r(a.field_);
        r.shift_ = m;
        if (a.den_ == b.den_) {
            r.num_ = a.num_.shifted(da) + b.num_.shifted(db);
            r.den_ = a.den_;
        } else {
            r.num_ = a.num_.shifted(da) * b.den_ + b.num_.shifted(db) * a.den_;
            r.den_ = a.den_ * b.den_;
        }
        r.normalize();
        return r;
    }
    friend CoeffScalar operator-(const CoeffScalar& a, const CoeffScalar& b) { return a + (-b); }

    friend CoeffScalar operator*(const CoeffScalar& a, const CoeffScalar& b) {
        a.check(b);
        CoeffScalar r(a.field_);
        if (a.is_zero() || b.is_zero()) return r;
        for (std::size_t i = 0; i < r.shift_.size(); ++i) r.shift_[i] = a.shift_[i] + b.shift_[i];
        if (a.den_.is_constant() && b.den_.is_constant()) {
            // Denominators are monic constants, i.e. 1.
            r.num_ = a.num_ * b.num_;
            r.normalize_shift_only();
            return r;
        }
        // Cross-cancel before multiplying to keep sizes down.
        MPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        MPoly an = g1.is_constant() ? a.num_ : exact_divide(a.num_, g1);
        MPoly bd = g1.is_constant() ? b.den_ : exact_divide(b.den_, g1);
        MPoly bn = g2.is_constant() ? b.num_ : exact_divide(b.num_, g2);
        MPoly ad = g2.is_constant() ? a.den_ : exact_divide(a.den_, g2);
        r.num_ = an * bn;
        r.den_ = ad * bd;
        Cyclotomic lc = r.den_.make_monic();
        r.num_ = r.num_.scaled(lc.inverse());
        r.normalize_shift_only();
        return r;
    }

    CoeffScalar inverse() const {
        if (is_zero()) throw std::domain_error("CoeffScalar::inverse: division by zero");
        CoeffScalar r(field_);
        for (std::size_t i = 0; i < shift_.size(); ++i) r.shift_[i] = -shift_[i];
        r.num_ = den_;
        r.den_ = num_;
        Cyclotomic lc = r.den_.make_monic();
        r.num_ = r.num_.scaled(lc.inverse());
        return r;
    }
    friend CoeffScalar operator/(const CoeffScalar& a, const CoeffScalar& b) { return a * b.inverse(); }

    CoeffScalar& operator+=(const CoeffScalar& o) { return *this = *this + o; }
    CoeffScalar& operator-=(const CoeffScalar& o) { return *this = *this - o; }
    CoeffScalar& operator*=(const CoeffScalar& o) { return *this = *this * o; }

    friend bool operator==(const CoeffScalar& a, const CoeffScalar& b) {
        return a.field_ == b.field_ && a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Numerical value under zeta_d -> exp(2 pi i/d), u_t -> exp(2 pi i tau_t).
    std::complex<double> evaluate(const std::vector<double>& tau) const {
        if (static_cast<int>(tau.size()) != field_.s)
            throw std::invalid_argument("CoeffScalar::evaluate: need one value per transcendental");
        auto u = [&](const Exponent& e) {
            double ang = 0;
            for (std::size_t t = 0; t < e.size(); ++t) ang += e[t] * tau[t];
            ang *= 2.0 * std::numbers::pi;
            return std::complex<double>(std::cos(ang), std::sin(ang));
        };
        auto eval = [&](const MPoly& p) {
            std::complex<double> acc = 0;
            for (const auto& [e, c] : p.terms()) acc += c.evaluate() * u(e);
            return acc;
        };
        return u(shift_) * eval(num_) / eval(den_);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string mon;
        for (std::size_t i = 0; i < shift_.size(); ++i) {
            if (shift_[i] == 0) continue;
            if (!mon.empty()) mon += "*";
            mon += "u" + std::to_string(i + 1);
            if (shift_[i] != 1) mon += "^" + std::to_string(shift_[i]);
        }
        std::string n = num_.to_string();
        bool compound = !detail::is_wrapped(n) && (n.find(" + ") != std::string::npos || n.find(" - ") != std::string::npos);
        std::string out;
        if (mon.empty()) {
            out = n;
        } else if (n == "1") {
            out = mon;
        } else if (n == "-1") {
            out = "-" + mon;
        } else {
            out = (compound ? "(" + n + ")" : n) + "*" + mon;
        }
        if (!den_.is_constant()) {
            bool oc = out.find(" + ") != std::string::npos || out.find(" - ") != std::string::npos;
            out = (oc ? "(" + out + ")" : out) + "/(" + den_.to_string() + ")";
        }
        return out;
    }

private:
    static MPoly one_poly(FieldSpec f) { return MPoly::constant(f.cyclo, f.s, Cyclotomic(f.cyclo, 1)); }

    void check(const CoeffScalar& o) const {
        if (!(field_ == o.field_)) throw std::invalid_argument("CoeffScalar: mismatched fields");
    }

    // Pulls monomial factors of num into the shift; num and den must already be coprime.
    void normalize_shift_only() {
        if (num_.is_zero()) {
            *this = CoeffScalar(field_);
            return;
        }
        Exponent m = num_.min_exponent();
        bool any = false;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] != 0) any = true;
            shift_[i] += m[i];
            m[i] = -m[i];
        }
        if (any) num_ = num_.shifted(m);
    }

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("CoeffScalar: zero denominator");
        if (num_.is_zero()) {
            *this = CoeffScalar(field_);
            return;
        }
        Exponent mn = num_.min_exponent(), md = den_.min_exponent();
        Exponent neg_n(mn.size()), neg_d(md.size());
        bool sn = false, sd = false;
        for (std::size_t i = 0; i < mn.size(); ++i) {
            shift_[i] += mn[i] - md[i];
            neg_n[i] = -mn[i];
            neg_d[i] = -md[i];
            sn = sn || mn[i] != 0;
            sd = sd || md[i] != 0;
        }
        if (sn) num_ = num_.shifted(neg_n);
        if (sd) den_ = den_.shifted(neg_d);
        if (!den_.is_constant()) {
            MPoly g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = exact_divide(num_, g);
                den_ = exact_divide(den_, g);
            }
        }
        Cyclotomic lc = den_.make_monic();
        if (!lc.is_one()) num_ = num_.scaled(lc.inverse());
    }

    FieldSpec field_;
    Exponent shift_;
    MPoly num_;
    MPoly den_;
};

}  // namespace qtorus
