#pragma once

// Sparse multivariate polynomials over Q(zeta_d) with exact division and gcd.
// Exponents are nonnegative; Laurent monomial factors are handled one level up
// in CoeffScalar.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"

namespace qtorus {

using Exponent = std::vector<int>;

class MPoly {
public:
    using TermMap = std::map<Exponent, Cyclotomic>;

    MPoly() = default;
    MPoly(const CyclotomicField* field, int nvars) : field_(field), nvars_(nvars) {}

    static MPoly constant(const CyclotomicField* field, int nvars, const Cyclotomic& c) {
        MPoly p(field, nvars);
        if (!c.is_zero()) p.terms_.emplace(Exponent(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }
    static MPoly monomial(const CyclotomicField* field, Exponent e, const Cyclotomic& c) {
        MPoly p(field, static_cast<int>(e.size()));
        if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
        return p;
    }

    const CyclotomicField* field() const noexcept { return field_; }
    int nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() != 1) return false;
        const auto& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }
    Cyclotomic constant_term() const {
        Exponent zero(static_cast<std::size_t>(nvars_), 0);
        auto it = terms_.find(zero);
        return it == terms_.end() ? Cyclotomic(field_) : it->second;
    }

    /// Lex-largest term.
    const std::pair<const Exponent, Cyclotomic>& leading() const {
        if (terms_.empty()) throw std::domain_error("MPoly::leading: zero polynomial");
        return *terms_.rbegin();
    }

    void add_term(const Exponent& e, const Cyclotomic& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    MPoly operator-() const {
        MPoly r(field_, nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.field_ ? a.field_ : b.field_, std::max(a.nvars_, b.nvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MPoly scaled(const Cyclotomic& c) const {
        MPoly r(field_, nvars_);
        if (c.is_zero()) return r;
        for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
        return r;
    }
    /// Multiplies by u^shift; shift may be negative as long as the result stays polynomial.
    MPoly shifted(const Exponent& shift) const {
        MPoly r(field_, nvars_);
        for (const auto& [e, x] : terms_) {
            Exponent f = e;
            for (std::size_t i = 0; i < f.size(); ++i) {
                f[i] += shift[i];
                if (f[i] < 0) throw std::domain_error("MPoly::shifted: negative exponent");
            }
            r.terms_.emplace(std::move(f), x);
        }
        return r;
    }
    /// Componentwise minimum exponent over all terms (the largest monomial divisor).
    Exponent min_exponent() const {
        Exponent m(static_cast<std::size_t>(nvars_), 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first) {
                m = e;
                first = false;
            } else {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
            }
        }
        return m;
    }

    int degree_in(int var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
        return d;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    /// Exact quotient; throws if b does not divide a.
    friend MPoly exact_divide(const MPoly& a, const MPoly& b) {
        if (b.is_zero()) throw std::domain_error("exact_divide: division by zero");
        MPoly q(a.field_ ? a.field_ : b.field_, std::max(a.nvars_, b.nvars_));
        if (a.is_zero()) return q;
        const auto& [lb_e, lb_c] = b.leading();
        if (b.size() == 1) {
            Cyclotomic inv = lb_c.inverse();
            for (const auto& [e, c] : a.terms_) {
                Exponent f = e;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    f[i] -= lb_e[i];
                    if (f[i] < 0) throw std::domain_error("exact_divide: not divisible");
                }
                q.terms_.emplace(std::move(f), c * inv);
            }
            return q;
        }
        Cyclotomic inv = lb_c.inverse();
        MPoly r = a;
        while (!r.is_zero()) {
            const auto& [lr_e, lr_c] = r.leading();
            Exponent f = lr_e;
            for (std::size_t i = 0; i < f.size(); ++i) {
                f[i] -= lb_e[i];
                if (f[i] < 0) throw std::domain_error("exact_divide: not divisible");
            }
            Cyclotomic c = lr_c * inv;
            MPoly t = monomial(r.field_, f, c);
            q.add_term(f, c);
            r -= t * b;
        }
        return q;
    }

    /// Makes the lex-leading coefficient equal to 1; returns the factor divided out.
    Cyclotomic make_monic() {
        if (is_zero()) return Cyclotomic(field_, 1);
        Cyclotomic lc = leading().second;
        if (lc.is_one()) return lc;
        Cyclotomic inv = lc.inverse();
        for (auto& [e, c] : terms_) c *= inv;
        return lc;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string cs = c.to_string();
            bool mono = std::any_of(e.begin(), e.end(), [](int x) { return x != 0; });
            bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
            bool negative = !compound && !cs.empty() && cs[0] == '-';
            if (negative) cs = cs.substr(1);
            if (!first) out += negative ? " - " : " + ";
            else if (negative) out += "-";
            first = false;
            std::string mon;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mon.empty()) mon += "*";
                mon += "u" + std::to_string(i + 1);
                if (e[i] != 1) mon += "^" + std::to_string(e[i]);
            }
            if (!mono) {
                out += compound ? "(" + cs + ")" : cs;
            } else if (cs == "1") {
                out += mon;
            } else {
                out += (compound ? "(" + cs + ")" : cs) + "*" + mon;
            }
        }
        return out;
    }

private:
    const CyclotomicField* field_ = nullptr;
    int nvars_ = 0;
    TermMap terms_;
};

namespace detail {

// True when s is a single parenthesized group such as "(1 + z)".
inline bool is_wrapped(const std::string& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
        if (depth == 0 && i + 1 < s.size()) return false;
    }
    return true;
}

// Splits p into coefficients of powers of variable `var`.
inline std::map<int, MPoly> coefficients_in(const MPoly& p, int var) {
    std::map<int, MPoly> out;
    for (const auto& [e, c] : p.terms()) {
        Exponent f = e;
        int k = f[static_cast<std::size_t>(var)];
        f[static_cast<std::size_t>(var)] = 0;
        auto [it, ins] = out.try_emplace(k, p.field(), p.nvars());
        it->second.add_term(f, c);
    }
    return out;
}

inline MPoly var_power(const MPoly& like, int var, int k) {
    Exponent e(static_cast<std::size_t>(like.nvars()), 0);
    e[static_cast<std::size_t>(var)] = k;
    return MPoly::monomial(like.field(), e, Cyclotomic(like.field(), 1));
}

MPoly gcd_from(const MPoly& a, const MPoly& b, int var);

// gcd of the coefficients of p viewed in `var`; lives in variables > var.
inline MPoly content_in(const MPoly& p, int var) {
    auto coeffs = coefficients_in(p, var);
    MPoly g(p.field(), p.nvars());
    for (auto& [k, c] : coeffs) {
        g = g.is_zero() ? c : gcd_from(g, c, var + 1);
        if (g.is_constant()) break;
    }
    g.make_monic();
    return g;
}

inline MPoly primitive_in(const MPoly& p, int var) {
    if (p.is_zero()) return p;
    MPoly c = content_in(p, var);
    return c.is_constant() ? p : exact_divide(p, c);
}

// Pseudo-remainder of a by b with respect to `var` (deg_var b >= 0).
inline MPoly pseudo_remainder(MPoly a, const MPoly& b, int var) {
    const int db = b.degree_in(var);
    MPoly lcb = coefficients_in(b, var).rbegin()->second;
    while (!a.is_zero() && a.degree_in(var) >= db) {
        const int da = a.degree_in(var);
        MPoly lca = coefficients_in(a, var).rbegin()->second;
        a = lcb * a - lca * var_power(a, var, da - db) * b;
    }
    return a;
}

// gcd over K[x_var, ..., x_{s-1}]; a and b do not involve variables below `var`.
inline MPoly gcd_from(const MPoly& a, const MPoly& b, int var) {
    const CyclotomicField* f = a.field() ? a.field() : b.field();
    const int nv = std::max(a.nvars(), b.nvars());
    if (a.is_zero() && b.is_zero()) return MPoly(f, nv);
    if (a.is_zero()) { MPoly r = b; r.make_monic(); return r; }
    if (b.is_zero()) { MPoly r = a; r.make_monic(); return r; }
    if (a.is_constant() || b.is_constant()) return MPoly::constant(f, nv, Cyclotomic(f, 1));
    // Skip variables that neither polynomial involves.
    while (var < nv && a.degree_in(var) <= 0 && b.degree_in(var) <= 0) ++var;
    if (var >= nv) return MPoly::constant(f, nv, Cyclotomic(f, 1));

    MPoly ca = content_in(a, var), cb = content_in(b, var);
    MPoly cont = gcd_from(ca, cb, var + 1);
    MPoly pa = ca.is_constant() ? a : exact_divide(a, ca);
    MPoly pb = cb.is_constant() ? b : exact_divide(b, cb);
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
    while (!pb.is_zero() && pb.degree_in(var) > 0) {
        MPoly r = pseudo_remainder(pa, pb, var);
        pa = std::move(pb);
        pb = primitive_in(r, var);
    }
    MPoly g = pb.is_zero() ? primitive_in(pa, var) : MPoly::constant(f, nv, Cyclotomic(f, 1));
    MPoly out = cont * g;
    out.make_monic();
    return out;
}

}  // namespace detail

/// Monic gcd (lex-leading coefficient 1) in Q(zeta_d)[u_1..u_s].
inline MPoly gcd(const MPoly& a, const MPoly& b) { return detail::gcd_from(a, b, 0); }

}  // namespace qtorus
