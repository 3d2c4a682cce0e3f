#pragma once

// The algebraic quantum torus: q-twisted Laurent polynomials in the normally ordered
// monomial basis x^g = x_1^{g_1} ... x_n^{g_n}.

#include <compare>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "phase.hpp"

namespace qtorus {

class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int n) : v_(static_cast<std::size_t>(n), 0) {}
    MultiIndex(std::initializer_list<long long> xs) : v_(xs) {}
    explicit MultiIndex(std::vector<long long> xs) : v_(std::move(xs)) {}

    static MultiIndex unit(int n, int i) {
        MultiIndex e(n);
        e.v_[static_cast<std::size_t>(i)] = 1;
        return e;
    }

    std::size_t size() const noexcept { return v_.size(); }
    long long operator[](std::size_t i) const { return v_[i]; }
    long long& operator[](std::size_t i) { return v_[i]; }
    const std::vector<long long>& values() const noexcept { return v_; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }

    bool is_zero() const {
        for (auto x : v_)
            if (x != 0) return false;
        return true;
    }
    long long l1() const {
        long long s = 0;
        for (auto x : v_) s += std::llabs(x);
        return s;
    }
    long long sup() const {
        long long s = 0;
        for (auto x : v_) s = std::max(s, std::llabs(x));
        return s;
    }

    MultiIndex& operator+=(const MultiIndex& o) {
        check(o);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    MultiIndex& operator-=(const MultiIndex& o) {
        check(o);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }
    MultiIndex operator-() const {
        MultiIndex r = *this;
        for (auto& x : r.v_) x = -x;
        return r;
    }

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < v_.size(); ++i) s += (i ? "," : "") + std::to_string(v_[i]);
        return s + ")";
    }

private:
    void check(const MultiIndex& o) const {
        if (o.v_.size() != v_.size()) throw std::invalid_argument("MultiIndex: length mismatch");
    }
    std::vector<long long> v_;
};

/// p(a, b) = sum_{i>j} theta_ij a_i b_j, so that x^a x^b = exp(2 pi i p(a,b)) x^{a+b}.
inline Angle monomial_product_phase(const ThetaMatrix& ctx, const MultiIndex& a, const MultiIndex& b) {
    const int n = ctx.n();
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("monomial_product_phase: dimension mismatch");
    Angle acc = ctx.zero_angle();
    for (int i = 1; i < n; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < i; ++j) {
            long long w = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
            if (w != 0) acc += w * ctx.theta(i, j);
        }
    }
    return acc;
}

/// A finite sum of normally ordered monomials with coefficients in F.
class QLaurent {
public:
    using TermMap = std::map<MultiIndex, CoeffScalar>;

    QLaurent() = default;
    QLaurent(int n, FieldSpec field) : n_(n), field_(field) {}
    explicit QLaurent(const ThetaMatrix& ctx) : n_(ctx.n()), field_(ctx.field()) {}

    static QLaurent one(const ThetaMatrix& ctx) { return monomial(ctx, MultiIndex(ctx.n())); }
    static QLaurent monomial(const ThetaMatrix& ctx, const MultiIndex& g, const CoeffScalar& c) {
        QLaurent r(ctx);
        r.add_term(g, c);
        return r;
    }
    static QLaurent monomial(const ThetaMatrix& ctx, const MultiIndex& g) {
        return monomial(ctx, g, CoeffScalar::one(ctx.field()));
    }
    /// x_i^{power}, 0-based generator index.
    static QLaurent generator(const ThetaMatrix& ctx, int i, long long power = 1) {
        MultiIndex g(ctx.n());
        g[static_cast<std::size_t>(i)] = power;
        return monomial(ctx, g);
    }

    int n() const noexcept { return n_; }
    const FieldSpec& field() const noexcept { return field_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    CoeffScalar coefficient(const MultiIndex& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? CoeffScalar::zero(field_) : it->second;
    }

    void add_term(const MultiIndex& g, const CoeffScalar& c) {
        if (static_cast<int>(g.size()) != n_) throw std::invalid_argument("QLaurent: multi-index length mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(g, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    QLaurent& operator+=(const QLaurent& o) {
        for (const auto& [g, c] : o.terms_) add_term(g, c);
        return *this;
    }
    QLaurent& operator-=(const QLaurent& o) {
        for (const auto& [g, c] : o.terms_) add_term(g, -c);
        return *this;
    }
    friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
    friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
    QLaurent operator-() const {
        QLaurent r(n_, field_);
        for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
        return r;
    }

    friend bool operator==(const QLaurent& a, const QLaurent& b) { return a.terms_ == b.terms_; }

private:
    int n_ = 0;
    FieldSpec field_;
    TermMap terms_;
};

inline QLaurent add(const QLaurent& a, const QLaurent& b) { return a + b; }

inline QLaurent scalar_mul(const CoeffScalar& c, const QLaurent& a) {
    QLaurent r(a.n(), a.field());
    if (c.is_zero()) return r;
    for (const auto& [g, x] : a.terms()) r.add_term(g, c * x);
    return r;
}

inline bool equals(const QLaurent& a, const QLaurent& b) { return a == b; }

/// The deformed product, bilinear extension of x^a x^b = exp(2 pi i p(a,b)) x^{a+b}.
inline QLaurent multiply(const ThetaMatrix& ctx, const QLaurent& a, const QLaurent& b) {
    QLaurent r(ctx);
    for (const auto& [ga, ca] : a.terms())
        for (const auto& [gb, cb] : b.terms())
            r.add_term(ga + gb, angle_to_scalar(monomial_product_phase(ctx, ga, gb), ctx) * ca * cb);
    return r;
}

/// sigma(x_j) = exp(2 pi i b_j) x_j.
class ScalingAutomorphism {
public:
    ScalingAutomorphism() = default;
    explicit ScalingAutomorphism(std::vector<Angle> b) : b_(std::move(b)) {}

    static ScalingAutomorphism identity(const ThetaMatrix& ctx) {
        return ScalingAutomorphism(std::vector<Angle>(static_cast<std::size_t>(ctx.n()), ctx.zero_angle()));
    }
    /// The twist alpha(x_j) = prod_{i>j} q_ij x_j.
    static ScalingAutomorphism koszul_alpha(const ThetaMatrix& ctx) {
        std::vector<Angle> b;
        for (int j = 0; j < ctx.n(); ++j) {
            Angle a = ctx.zero_angle();
            for (int i = j + 1; i < ctx.n(); ++i) a += ctx.theta(i, j);
            b.push_back(std::move(a));
        }
        return ScalingAutomorphism(std::move(b));
    }
    /// Conjugation by x^v: x_j -> x^v x_j x^{-v} = exp(2 pi i sum_i v_i theta_ij) x_j.
    static ScalingAutomorphism inner(const ThetaMatrix& ctx, const MultiIndex& v) {
        std::vector<Angle> b;
        for (int j = 0; j < ctx.n(); ++j) {
            Angle a = ctx.zero_angle();
            for (int i = 0; i < ctx.n(); ++i)
                if (v[static_cast<std::size_t>(i)] != 0) a += v[static_cast<std::size_t>(i)] * ctx.theta(i, j);
            b.push_back(std::move(a));
        }
        return ScalingAutomorphism(std::move(b));
    }

    int n() const noexcept { return static_cast<int>(b_.size()); }
    const std::vector<Angle>& angles() const noexcept { return b_; }
    const Angle& angle(int j) const { return b_[static_cast<std::size_t>(j)]; }

    ScalingAutomorphism inverse() const {
        std::vector<Angle> b;
        for (const auto& a : b_) b.push_back(-a);
        return ScalingAutomorphism(std::move(b));
    }
    /// Phase picked up by x^g: sum_j b_j g_j.
    Angle phase_of(const MultiIndex& g) const {
        if (g.size() != b_.size()) throw std::invalid_argument("ScalingAutomorphism: dimension mismatch");
        Angle acc(b_.empty() ? 0 : b_.front().s());
        for (std::size_t j = 0; j < b_.size(); ++j)
            if (g[j] != 0) acc += g[j] * b_[j];
        return acc;
    }
    bool is_identity() const {
        for (const auto& a : b_)
            if (!a.is_trivial()) return false;
        return true;
    }

    friend bool operator==(const ScalingAutomorphism& a, const ScalingAutomorphism& b) {
        if (a.b_.size() != b.b_.size()) return false;
        for (std::size_t j = 0; j < a.b_.size(); ++j)
            if (!a.b_[j].group_equal(b.b_[j])) return false;
        return true;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t j = 0; j < b_.size(); ++j) s += (j ? "; " : "") + b_[j].to_string();
        return s + "]";
    }

private:
    std::vector<Angle> b_;
};

inline QLaurent apply_automorphism(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma, const QLaurent& a) {
    QLaurent r(ctx);
    for (const auto& [g, c] : a.terms()) r.add_term(g, angle_to_scalar(sigma.phase_of(g), ctx) * c);
    return r;
}

/// A_sigma (x)_A A_tau = A_{sigma tau} for right-twisted bimodules; for scaling
/// automorphisms the angles simply add.
inline ScalingAutomorphism compose_twists(const ScalingAutomorphism& sigma, const ScalingAutomorphism& tau) {
    if (sigma.n() != tau.n()) throw std::invalid_argument("compose_twists: dimension mismatch");
    std::vector<Angle> b;
    for (int j = 0; j < sigma.n(); ++j) b.push_back(sigma.angle(j) + tau.angle(j));
    return ScalingAutomorphism(std::move(b));
}

/// "c * x1^a1 ... xn^an + ..." in lexicographic order of exponents; "0" when empty.
inline std::string to_string(const QLaurent& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [g, c] : a.terms()) {
        std::string cs = c.to_string();
        bool compound = !detail::is_wrapped(cs) && (cs.find(" + ") != std::string::npos ||
                                                    cs.find(" - ") != std::string::npos || cs.find("/(") != std::string::npos);
        bool negative = !compound && cs[0] == '-';
        if (negative) cs = cs.substr(1);
        if (!first) out += negative ? " - " : " + ";
        else if (negative) out += "-";
        first = false;
        out += compound ? "(" + cs + ")" : cs;
        out += " *";
        for (std::size_t i = 0; i < g.size(); ++i) out += " x" + std::to_string(i + 1) + "^" + std::to_string(g[i]);
    }
    return out;
}

}  // namespace qtorus
