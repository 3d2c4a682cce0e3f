#pragma once

// The bimodule Koszul resolution K_p = A (x) Lambda^p C^n (x) A of the quantum torus,
// its differential, and Hochschild (co)homology with coefficients in A_sigma computed
// one Fourier mode at a time.
//
// Conventions. A_sigma is right-twisted: a.m.b = a m sigma(b). Chains are
// A_sigma (x)_{A^e} K_p = A_sigma (x) Lambda^p via x (x) (a (x) v (x) b) -> b x sigma(a).
// A homology chain of mode gamma is x^{gamma - e_I} (x) e_I; a cochain of mode mu sends
// e_J to a multiple of x^{mu + e_J}.
//
// Per-mode identification. With w_I = exp(2 pi i sum_{s<r} theta_{i_s i_r}) and the
// rescaled basis b'_I = w_I^{-1} x^{gamma-e_I} (x) e_I, the induced differential becomes
// the scalar Koszul differential  e_I -> sum_k (-1)^k lambda_{i_k}(gamma) e_{I \ i_k}
// where lambda_j(gamma) is the coefficient of x^gamma in x^{gamma-e_j} sigma(x_j) - x_j x^{gamma-e_j}.
// On cochains the phases cancel with no rescaling: (delta f)(e_I) = sum_k (-1)^k kappa_{i_k}(mu) f(e_{I\i_k})
// with kappa_j(mu) the coefficient of x^{mu+e_j} in x_j x^mu - x^mu sigma(x_j).
// Both vanish iff the angle b_j + sum_i theta_ij gamma_i is trivial.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "qlaurent.hpp"

namespace qtorus {

/// Strictly increasing subset of {0..n-1}; printed 1-based as "e1e3".
class WedgeIndex {
public:
    WedgeIndex() = default;
    explicit WedgeIndex(std::vector<int> idx) : idx_(std::move(idx)) {
        for (std::size_t k = 1; k < idx_.size(); ++k)
            if (idx_[k - 1] >= idx_[k]) throw std::invalid_argument("WedgeIndex: indices must be strictly increasing");
    }

    std::size_t size() const noexcept { return idx_.size(); }
    int operator[](std::size_t k) const { return idx_[k]; }
    const std::vector<int>& indices() const noexcept { return idx_; }
    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }

    WedgeIndex without(std::size_t k) const {
        std::vector<int> r = idx_;
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(k));
        return WedgeIndex(std::move(r));
    }
    bool contains(int i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

    /// e_I as an exponent vector.
    MultiIndex indicator(int n) const {
        MultiIndex m(n);
        for (int i : idx_) m[static_cast<std::size_t>(i)] = 1;
        return m;
    }

    friend auto operator<=>(const WedgeIndex&, const WedgeIndex&) = default;
    friend bool operator==(const WedgeIndex&, const WedgeIndex&) = default;

    std::string to_string() const {
        if (idx_.empty()) return "1";
        std::string s;
        for (int i : idx_) s += "e" + std::to_string(i + 1);
        return s;
    }

private:
    std::vector<int> idx_;
};

/// All p-subsets of {0..n-1} in lexicographic order.
inline std::vector<WedgeIndex> wedge_basis(int n, int p) {
    std::vector<WedgeIndex> out;
    if (p < 0 || p > n) return out;
    std::vector<int> c(static_cast<std::size_t>(p));
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.emplace_back(c);
        int k = p - 1;
        while (k >= 0 && c[static_cast<std::size_t>(k)] == n - p + k) --k;
        if (k < 0) break;
        ++c[static_cast<std::size_t>(k)];
        for (int l = k + 1; l < p; ++l) c[static_cast<std::size_t>(l)] = c[static_cast<std::size_t>(l - 1)] + 1;
    }
    return out;
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Element of K_p = A (x) Lambda^p (x) A, stored on the monomial basis x^a (x) e_I (x) x^b.
class KoszulElement {
public:
    using Key = std::tuple<MultiIndex, WedgeIndex, MultiIndex>;

    KoszulElement() = default;
    KoszulElement(const ThetaMatrix& ctx, int degree) : n_(ctx.n()), p_(degree), field_(ctx.field()) {
        if (degree < 0 || degree > ctx.n()) throw std::invalid_argument("KoszulElement: degree out of range");
    }
    /// a (x) e_I (x) b, expanded bilinearly.
    static KoszulElement simple(const ThetaMatrix& ctx, const QLaurent& a, const WedgeIndex& I, const QLaurent& b) {
        KoszulElement e(ctx, static_cast<int>(I.size()));
        for (const auto& [ga, ca] : a.terms())
            for (const auto& [gb, cb] : b.terms()) e.add_term(ga, I, gb, ca * cb);
        return e;
    }

    int degree() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    const FieldSpec& field() const noexcept { return field_; }
    const std::map<Key, CoeffScalar>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const MultiIndex& a, const WedgeIndex& I, const MultiIndex& b, const CoeffScalar& c) {
        if (static_cast<int>(I.size()) != p_) throw std::invalid_argument("KoszulElement: wedge degree mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(Key{a, I, b}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    CoeffScalar coefficient(const MultiIndex& a, const WedgeIndex& I, const MultiIndex& b) const {
        auto it = terms_.find(Key{a, I, b});
        return it == terms_.end() ? CoeffScalar::zero(field_) : it->second;
    }

    KoszulElement& operator+=(const KoszulElement& o) {
        for (const auto& [k, c] : o.terms_) add_term(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
        return *this;
    }
    friend bool operator==(const KoszulElement& a, const KoszulElement& b) {
        return a.p_ == b.p_ && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ") " + std::get<0>(k).to_string() + " (x) " + std::get<1>(k).to_string() +
                   " (x) " + std::get<2>(k).to_string();
        }
        return out;
    }

private:
    int n_ = 0;
    int p_ = 0;
    FieldSpec field_;
    std::map<Key, CoeffScalar> terms_;
};

namespace detail {

inline CoeffScalar phase(const ThetaMatrix& ctx, const Angle& a) { return angle_to_scalar(a, ctx); }

// sum_{s<k} theta_{i_s i_k} and sum_{s>k} theta_{i_k i_s}
inline Angle left_phase(const ThetaMatrix& ctx, const WedgeIndex& I, std::size_t k) {
    Angle a = ctx.zero_angle();
    for (std::size_t s = 0; s < k; ++s) a += ctx.theta(I[s], I[k]);
    return a;
}
inline Angle right_phase(const ThetaMatrix& ctx, const WedgeIndex& I, std::size_t k) {
    Angle a = ctx.zero_angle();
    for (std::size_t s = k + 1; s < I.size(); ++s) a += ctx.theta(I[k], I[s]);
    return a;
}
// sum_{s<r} theta_{i_s i_r}
inline Angle wedge_weight(const ThetaMatrix& ctx, const WedgeIndex& I) {
    Angle a = ctx.zero_angle();
    for (std::size_t s = 0; s < I.size(); ++s)
        for (std::size_t r = s + 1; r < I.size(); ++r) a += ctx.theta(I[s], I[r]);
    return a;
}

inline void check_twist(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma) {
    if (sigma.n() != ctx.n()) throw std::invalid_argument("twist has the wrong number of generators");
    for (const auto& b : sigma.angles()) {
        if (b.s() != ctx.s()) throw std::invalid_argument("twist angle has the wrong number of irrationals");
        if (Rational(b.rational_part() * ctx.d()).get_den() != 1)
            throw std::invalid_argument("twist angle " + b.to_string() + " has a rational part not in (1/" +
                                        std::to_string(ctx.d()) + ")Z");
    }
}

}  // namespace detail

/// The Koszul differential d: K_p -> K_{p-1},
///   d(a (x) e_I (x) b) = sum_k (-1)^{k-1} [ prod_{s<k} q_{i_s i_k} a x_{i_k} (x) e_{I\i_k} (x) b
///                                          - prod_{s>k} q_{i_k i_s} a (x) e_{I\i_k} (x) x_{i_k} b ].
inline KoszulElement koszul_differential(const ThetaMatrix& ctx, const KoszulElement& e) {
    if (e.degree() < 1) throw std::invalid_argument("koszul_differential: degree 0 (use augmentation)");
    KoszulElement out(ctx, e.degree() - 1);
    const int n = ctx.n();
    for (const auto& [key, c] : e.terms()) {
        const auto& [a, I, b] = key;
        for (std::size_t k = 0; k < I.size(); ++k) {
            const int j = I[k];
            const MultiIndex ej = MultiIndex::unit(n, j);
            const WedgeIndex J = I.without(k);
            CoeffScalar sign = CoeffScalar(ctx.field(), (k % 2 == 0) ? 1 : -1);
            // a x_j = exp(2 pi i p(a, e_j)) x^{a+e_j};  x_j b = exp(2 pi i p(e_j, b)) x^{e_j+b}
            Angle left = detail::left_phase(ctx, I, k) + monomial_product_phase(ctx, a, ej);
            Angle right = detail::right_phase(ctx, I, k) + monomial_product_phase(ctx, ej, b);
            out.add_term(a + ej, J, b, sign * detail::phase(ctx, left) * c);
            out.add_term(a, J, ej + b, -(sign * detail::phase(ctx, right) * c));
        }
    }
    return out;
}

/// mu_A: K_0 = A (x) A -> A, a (x) b -> ab.
inline QLaurent augmentation(const ThetaMatrix& ctx, const KoszulElement& e) {
    if (e.degree() != 0) throw std::invalid_argument("augmentation: element must have degree 0");
    QLaurent r(ctx);
    for (const auto& [key, c] : e.terms()) {
        const auto& [a, I, b] = key;
        r.add_term(a + b, detail::phase(ctx, monomial_product_phase(ctx, a, b)) * c);
    }
    return r;
}

/// Total mode a + e_I + b of a basis term.
inline MultiIndex total_mode(const KoszulElement::Key& key) {
    const auto& [a, I, b] = key;
    return a + I.indicator(static_cast<int>(a.size())) + b;
}

/// The angle b_j + sum_i theta_ij gamma_i whose triviality decides lambda_j(gamma) = 0.
inline Angle mode_angle(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma, const MultiIndex& gamma, int j) {
    Angle a = sigma.angle(j);
    for (int i = 0; i < ctx.n(); ++i)
        if (gamma[static_cast<std::size_t>(i)] != 0) a += gamma[static_cast<std::size_t>(i)] * ctx.theta(i, j);
    return a;
}

/// lambda_j(gamma): coefficient of x^gamma in x^{gamma-e_j} sigma(x_j) - x_j x^{gamma-e_j}.
inline std::vector<CoeffScalar> mode_scalars(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                             const MultiIndex& gamma) {
    detail::check_twist(ctx, sigma);
    std::vector<CoeffScalar> out;
    for (int j = 0; j < ctx.n(); ++j) {
        const MultiIndex ej = MultiIndex::unit(ctx.n(), j);
        const MultiIndex nu = gamma - ej;
        CoeffScalar right = detail::phase(ctx, monomial_product_phase(ctx, nu, ej) + sigma.angle(j));
        CoeffScalar left = detail::phase(ctx, monomial_product_phase(ctx, ej, nu));
        out.push_back(right - left);
    }
    return out;
}

/// kappa_j(mu): coefficient of x^{mu+e_j} in x_j x^mu - x^mu sigma(x_j).
inline std::vector<CoeffScalar> comode_scalars(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                               const MultiIndex& mu) {
    detail::check_twist(ctx, sigma);
    std::vector<CoeffScalar> out;
    for (int j = 0; j < ctx.n(); ++j) {
        const MultiIndex ej = MultiIndex::unit(ctx.n(), j);
        CoeffScalar left = detail::phase(ctx, monomial_product_phase(ctx, ej, mu));
        CoeffScalar right = detail::phase(ctx, monomial_product_phase(ctx, mu, ej) + sigma.angle(j));
        out.push_back(left - right);
    }
    return out;
}

using FieldMatrix = std::vector<std::vector<CoeffScalar>>;

/// Matrix (rows: p-1 subsets, columns: p subsets, lex order) of the scalar Koszul
/// differential e_I -> sum_k (-1)^k s_{i_k} e_{I\i_k}.
inline FieldMatrix scalar_koszul_matrix(const FieldSpec& field, const std::vector<CoeffScalar>& s, int p) {
    const int n = static_cast<int>(s.size());
    auto rows = wedge_basis(n, p - 1), cols = wedge_basis(n, p);
    FieldMatrix m(rows.size(), std::vector<CoeffScalar>(cols.size(), CoeffScalar::zero(field)));
    std::map<WedgeIndex, std::size_t> at;
    for (std::size_t r = 0; r < rows.size(); ++r) at.emplace(rows[r], r);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t k = 0; k < cols[c].size(); ++k) {
            CoeffScalar v = s[static_cast<std::size_t>(cols[c][k])];
            m[at.at(cols[c].without(k))][c] = (k % 2 == 0) ? v : -v;
        }
    return m;
}

/// The induced differential of A_sigma (x)_{A^e} K_. at mode gamma, degree p -> p-1, on the
/// raw basis x^{gamma-e_I} (x) e_I (lex order on I), computed from the Koszul formula.
inline FieldMatrix induced_differential(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                        const MultiIndex& gamma, int p) {
    detail::check_twist(ctx, sigma);
    const int n = ctx.n();
    auto rows = wedge_basis(n, p - 1), cols = wedge_basis(n, p);
    FieldMatrix m(rows.size(), std::vector<CoeffScalar>(cols.size(), CoeffScalar::zero(ctx.field())));
    std::map<WedgeIndex, std::size_t> at;
    for (std::size_t r = 0; r < rows.size(); ++r) at.emplace(rows[r], r);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const WedgeIndex& I = cols[c];
        const MultiIndex nu = gamma - I.indicator(n);
        for (std::size_t k = 0; k < I.size(); ++k) {
            const int j = I[k];
            const MultiIndex ej = MultiIndex::unit(n, j);
            // a (x) e_J (x) b acts on x as b x sigma(a): the left leg x_j gives x sigma(x_j), the right leg x_j x.
            Angle from_left = detail::left_phase(ctx, I, k) + monomial_product_phase(ctx, nu, ej) + sigma.angle(j);
            Angle from_right = detail::right_phase(ctx, I, k) + monomial_product_phase(ctx, ej, nu);
            CoeffScalar v = detail::phase(ctx, from_left) - detail::phase(ctx, from_right);
            m[at.at(I.without(k))][c] = (k % 2 == 0) ? v : -v;
        }
    }
    return m;
}

/// The induced codifferential of Hom_{A^e}(K_., A_sigma) at mode mu, degree p -> p+1
/// (rows: p+1 subsets, columns: p subsets), on cochains f_J: e_J -> x^{mu+e_J}.
inline FieldMatrix induced_codifferential(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                          const MultiIndex& mu, int p) {
    detail::check_twist(ctx, sigma);
    const int n = ctx.n();
    auto rows = wedge_basis(n, p + 1), cols = wedge_basis(n, p);
    FieldMatrix m(rows.size(), std::vector<CoeffScalar>(cols.size(), CoeffScalar::zero(ctx.field())));
    std::map<WedgeIndex, std::size_t> at;
    for (std::size_t c = 0; c < cols.size(); ++c) at.emplace(cols[c], c);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const WedgeIndex& I = rows[r];
        for (std::size_t k = 0; k < I.size(); ++k) {
            const int j = I[k];
            const WedgeIndex J = I.without(k);
            const MultiIndex ej = MultiIndex::unit(n, j);
            const MultiIndex v = mu + J.indicator(n);
            // (delta f)(e_I) = f(d(1 (x) e_I (x) 1)); a (x) e_J (x) b acts on f(e_J) as a f(e_J) sigma(b).
            Angle from_left = detail::left_phase(ctx, I, k) + monomial_product_phase(ctx, ej, v);
            Angle from_right = detail::right_phase(ctx, I, k) + monomial_product_phase(ctx, v, ej) + sigma.angle(j);
            CoeffScalar x = detail::phase(ctx, from_left) - detail::phase(ctx, from_right);
            m[r][at.at(J)] = (k % 2 == 0) ? x : -x;
        }
    }
    return m;
}

/// The induced differential conjugated into the rescaled basis b'_I: entries D[J][I] w_J / w_I.
inline FieldMatrix rescaled_differential(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                         const MultiIndex& gamma, int p) {
    FieldMatrix m = induced_differential(ctx, sigma, gamma, p);
    auto rows = wedge_basis(ctx.n(), p - 1), cols = wedge_basis(ctx.n(), p);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!m[r][c].is_zero())
                m[r][c] = m[r][c] *
                          detail::phase(ctx, detail::wedge_weight(ctx, rows[r]) - detail::wedge_weight(ctx, cols[c]));
    return m;
}

/// Homology dimensions at one mode from exact ranks of the induced complex (degrees 0..n).
inline std::vector<int> mode_homology_dims(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                           const MultiIndex& gamma) {
    const int n = ctx.n();
    std::vector<int> rank(static_cast<std::size_t>(n + 2), 0);
    for (int p = 1; p <= n; ++p)
        rank[static_cast<std::size_t>(p)] =
            static_cast<int>(rank_over_field(ctx.field(), induced_differential(ctx, sigma, gamma, p)));
    std::vector<int> dims;
    for (int p = 0; p <= n; ++p)
        dims.push_back(static_cast<int>(binomial(n, p)) - rank[static_cast<std::size_t>(p)] -
                       rank[static_cast<std::size_t>(p + 1)]);
    return dims;
}

/// Cohomology dimensions at one mode from exact ranks of the induced cochain complex.
inline std::vector<int> mode_cohomology_dims(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                             const MultiIndex& mu) {
    const int n = ctx.n();
    // rank[p] = rank of delta: C^p -> C^{p+1}
    std::vector<int> rank(static_cast<std::size_t>(n + 1), 0);
    for (int p = 0; p < n; ++p)
        rank[static_cast<std::size_t>(p)] =
            static_cast<int>(rank_over_field(ctx.field(), induced_codifferential(ctx, sigma, mu, p)));
    std::vector<int> dims;
    for (int p = 0; p <= n; ++p)
        dims.push_back(static_cast<int>(binomial(n, p)) - rank[static_cast<std::size_t>(p)] -
                       (p > 0 ? rank[static_cast<std::size_t>(p - 1)] : 0));
    return dims;
}

/// Exact description of a set of modes: affine equations over Z and congruences mod `modulus`.
class ModeSet {
public:
    struct Equation {
        std::vector<long long> form;
        long long rhs = 0;
        friend auto operator<=>(const Equation&, const Equation&) = default;
        friend bool operator==(const Equation&, const Equation&) = default;
    };
    struct Congruence {
        std::vector<long long> form;
        long long residue = 0;
        friend auto operator<=>(const Congruence&, const Congruence&) = default;
        friend bool operator==(const Congruence&, const Congruence&) = default;
    };

    ModeSet() = default;
    ModeSet(int n, long long modulus) : n_(n), modulus_(modulus) {}

    /// {gamma : b_j + sum_i theta_ij gamma_i trivial for all j}.
    static ModeSet vanishing_locus(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma) {
        detail::check_twist(ctx, sigma);
        const int n = ctx.n();
        const auto un = static_cast<std::size_t>(n);
        ModeSet ms(n, ctx.d());
        for (int j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            const Angle& b = sigma.angle(j);
            for (int t = 0; t < ctx.s(); ++t) {
                std::vector<long long> form(un);
                for (std::size_t i = 0; i < un; ++i) form[i] = ctx.irrational_parts()[static_cast<std::size_t>(t)][i][uj];
                ms.add_equation(std::move(form), -b.irrational_part()[static_cast<std::size_t>(t)]);
            }
            std::vector<long long> form(un);
            for (std::size_t i = 0; i < un; ++i) form[i] = Rational(ctx.rational_part()[i][uj] * ctx.d()).get_num().get_si();
            ms.add_congruence(std::move(form), Rational(-b.rational_part() * ctx.d()).get_num().get_si());
        }
        return ms;
    }

    int n() const noexcept { return n_; }
    long long modulus() const noexcept { return modulus_; }
    bool is_empty_by_construction() const noexcept { return empty_; }
    const std::vector<Equation>& equations() const noexcept { return eqs_; }
    const std::vector<Congruence>& congruences() const noexcept { return cons_; }
    bool is_full_lattice() const noexcept { return !empty_ && eqs_.empty() && cons_.empty(); }

    bool contains(const MultiIndex& g) const {
        if (empty_) return false;
        for (const auto& e : eqs_) {
            long long v = 0;
            for (std::size_t i = 0; i < e.form.size(); ++i) v += e.form[i] * g[i];
            if (v != e.rhs) return false;
        }
        for (const auto& c : cons_) {
            long long v = 0;
            for (std::size_t i = 0; i < c.form.size(); ++i) v += c.form[i] * g[i];
            if (mod(v - c.residue) != 0) return false;
        }
        return true;
    }

    /// Members with |gamma|_inf <= box, in lexicographic order.
    std::vector<MultiIndex> members_in_box(long long box) const {
        std::vector<MultiIndex> out;
        for_each_in_box(n_, box, [&](const MultiIndex& g) {
            if (contains(g)) out.push_back(g);
        });
        return out;
    }
    long long count_in_box(long long box) const {
        long long c = 0;
        for_each_in_box(n_, box, [&](const MultiIndex& g) { c += contains(g) ? 1 : 0; });
        return c;
    }

    std::string to_string() const {
        if (empty_) return "{}";
        if (is_full_lattice()) return "Z^" + std::to_string(n_);
        std::vector<std::string> parts;
        for (const auto& e : eqs_) parts.push_back(form_string(e.form) + " = " + std::to_string(e.rhs));
        for (const auto& c : cons_)
            parts.push_back(form_string(c.form) + " = " + std::to_string(c.residue) + " (mod " + std::to_string(modulus_) + ")");
        std::string s = "{g in Z^" + std::to_string(n_) + " : ";
        for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? ", " : "") + parts[k];
        return s + "}";
    }

    friend bool operator==(const ModeSet& a, const ModeSet& b) {
        return a.n_ == b.n_ && a.modulus_ == b.modulus_ && a.empty_ == b.empty_ && a.eqs_ == b.eqs_ && a.cons_ == b.cons_;
    }

    template <class F>
    static void for_each_in_box(int n, long long box, F&& f) {
        MultiIndex g(n);
        for (auto& x : g) x = -box;
        if (n == 0) {
            f(g);
            return;
        }
        while (true) {
            f(g);
            int k = n - 1;
            while (k >= 0 && g[static_cast<std::size_t>(k)] == box) g[static_cast<std::size_t>(k--)] = -box;
            if (k < 0) break;
            ++g[static_cast<std::size_t>(k)];
        }
    }

private:
    long long mod(long long v) const {
        long long r = v % modulus_;
        return r < 0 ? r + modulus_ : r;
    }

    void add_equation(std::vector<long long> form, long long rhs) {
        long long g = 0;
        for (auto x : form) g = std::gcd(g, x);
        if (g == 0) {
            if (rhs != 0) empty_ = true;
            return;
        }
        if (rhs % g != 0) {
            empty_ = true;
            return;
        }
        auto first = std::find_if(form.begin(), form.end(), [](long long x) { return x != 0; });
        if (*first < 0) g = -g;
        for (auto& x : form) x /= g;
        rhs /= g;
        Equation e{std::move(form), rhs};
        if (std::find(eqs_.begin(), eqs_.end(), e) == eqs_.end()) {
            eqs_.push_back(std::move(e));
            std::sort(eqs_.begin(), eqs_.end(), std::greater<>());
        }
    }

    void add_congruence(std::vector<long long> form, long long residue) {
        if (modulus_ == 1) return;
        for (auto& x : form) x = mod(x);
        residue = mod(residue);
        if (std::all_of(form.begin(), form.end(), [](long long x) { return x == 0; })) {
            if (residue != 0) empty_ = true;
            return;
        }
        // Scale by a unit mod the modulus so the leading coefficient divides the modulus.
        long long lead = *std::find_if(form.begin(), form.end(), [](long long x) { return x != 0; });
        long long g = std::gcd(lead, modulus_);
        for (long long u = 1; u < modulus_; ++u)
            if (std::gcd(u, modulus_) == 1 && mod(u * lead) == g) {
                for (auto& x : form) x = mod(u * x);
                residue = mod(u * residue);
                break;
            }
        Congruence c{std::move(form), residue};
        if (std::find(cons_.begin(), cons_.end(), c) == cons_.end()) {
            cons_.push_back(std::move(c));
            std::sort(cons_.begin(), cons_.end(), std::greater<>());
        }
    }

    static std::string form_string(const std::vector<long long>& f) {
        std::string s;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] == 0) continue;
            long long a = f[i] < 0 ? -f[i] : f[i];
            if (s.empty()) s += f[i] < 0 ? "-" : "";
            else s += f[i] < 0 ? " - " : " + ";
            if (a != 1) s += std::to_string(a) + "*";
            s += "g" + std::to_string(i + 1);
        }
        return s.empty() ? "0" : s;
    }

    int n_ = 0;
    long long modulus_ = 1;
    bool empty_ = false;
    std::vector<Equation> eqs_;
    std::vector<Congruence> cons_;
};

enum class Direction { homology, cohomology };

inline std::string to_string(Direction d) { return d == Direction::homology ? "homology" : "cohomology"; }

struct HomologyDegree {
    int degree = 0;
    long long multiplicity = 0;
    ModeSet modes;
};

/// Per degree: multiplicity binom(n,p) on a ModeSet (zero outside it).
struct HomologyTable {
    Direction direction = Direction::homology;
    ScalingAutomorphism twist;
    std::vector<HomologyDegree> degrees;

    /// sum over modes with |gamma|_inf <= box of the dimension in degree p.
    long long box_dimension(int p, long long box) const {
        for (const auto& d : degrees)
            if (d.degree == p) return d.multiplicity * d.modes.count_in_box(box);
        return 0;
    }
};

namespace detail {
inline HomologyTable make_table(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma, Direction dir) {
    HomologyTable t;
    t.direction = dir;
    t.twist = sigma;
    ModeSet ms = ModeSet::vanishing_locus(ctx, sigma);
    for (int p = 0; p <= ctx.n(); ++p) t.degrees.push_back({p, binomial(ctx.n(), p), ms});
    return t;
}
}  // namespace detail

/// HH_p(A, A_sigma): over the field F the Koszul complex of the scalars lambda(gamma) is
/// exact unless all of them vanish, in which case every differential is zero.
inline HomologyTable hochschild_homology(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma) {
    return detail::make_table(ctx, sigma, Direction::homology);
}

struct DualityMismatch {
    int degree = 0;  // cohomological degree i
    MultiIndex mode;  // cohomology mode mu
    int cohomology_dim = 0;
    int homology_dim = 0;
};

struct DualityReport {
    bool pass = false;
    ScalingAutomorphism dualizing;  // U = A_rho
    std::optional<MultiIndex> shift;  // mode of the fundamental class of H_n(A, U)
    std::optional<DualityMismatch> counterexample;
    long long box = 0;
    long long modes_checked = 0;
    std::string message;
};

/// Compares H^i(A, A_sigma) at mode mu with H_{n-i}(A, A_{rho sigma}) at mode mu + s for
/// every mu in the box and i in `degrees`, both sides from exact per-mode ranks. U = A_rho
/// is the dualizing bimodule and s the mode of the fundamental class of H_n(A, U) (the
/// smallest such mode in the box by sup norm, then lexicographically).
inline DualityReport duality_check(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                   const std::vector<int>& degrees, const ScalingAutomorphism& dualizing,
                                   long long box = 2) {
    detail::check_twist(ctx, sigma);
    detail::check_twist(ctx, dualizing);
    const int n = ctx.n();
    DualityReport rep;
    rep.dualizing = dualizing;
    rep.box = box;

    std::vector<MultiIndex> fundamental;
    ModeSet::for_each_in_box(n, box, [&](const MultiIndex& g) {
        if (mode_homology_dims(ctx, dualizing, g)[static_cast<std::size_t>(n)] != 0) fundamental.push_back(g);
    });
    if (fundamental.empty()) {
        rep.pass = false;
        MultiIndex zero(n);
        int hn = mode_homology_dims(ctx, dualizing, zero)[static_cast<std::size_t>(n)];
        int h0 = mode_cohomology_dims(ctx, sigma, zero)[0];
        rep.counterexample = DualityMismatch{0, zero, h0, hn};
        rep.message = "H_" + std::to_string(n) + "(A, A_rho) vanishes on every mode with |g|_inf <= " +
                      std::to_string(box) + " for rho = " + dualizing.to_string() +
                      ", so A_rho admits no fundamental class there";
        return rep;
    }
    std::stable_sort(fundamental.begin(), fundamental.end(), [](const MultiIndex& a, const MultiIndex& b) {
        return a.sup() < b.sup();
    });
    rep.shift = fundamental.front();
    const ScalingAutomorphism target = compose_twists(dualizing, sigma);

    bool ok = true;
    ModeSet::for_each_in_box(n, box, [&](const MultiIndex& mu) {
        if (!ok) return;
        ++rep.modes_checked;
        auto co = mode_cohomology_dims(ctx, sigma, mu);
        auto ho = mode_homology_dims(ctx, target, mu + *rep.shift);
        for (int i : degrees) {
            if (i < 0 || i > n) continue;
            int c = co[static_cast<std::size_t>(i)], h = ho[static_cast<std::size_t>(n - i)];
            if (c != h) {
                ok = false;
                rep.counterexample = DualityMismatch{i, mu, c, h};
                rep.message = "H^" + std::to_string(i) + " at mode " + mu.to_string() + " has dimension " +
                              std::to_string(c) + " but H_" + std::to_string(n - i) + " at mode " +
                              (mu + *rep.shift).to_string() + " has dimension " + std::to_string(h);
                return;
            }
        }
    });
    rep.pass = ok;
    if (ok) rep.message = "all degrees agree on " + std::to_string(rep.modes_checked) + " modes";
    return rep;
}

/// Default dualizing bimodule A_alpha with alpha(x_j) = prod_{i>j} q_ij x_j.
inline DualityReport duality_check(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                   const std::vector<int>& degrees, long long box = 2) {
    return duality_check(ctx, sigma, degrees, ScalingAutomorphism::koszul_alpha(ctx), box);
}

inline std::vector<int> all_degrees(int n) {
    std::vector<int> d(static_cast<std::size_t>(n + 1));
    std::iota(d.begin(), d.end(), 0);
    return d;
}

/// HH^p(A, A_sigma) from the per-mode cochain complex. Cross-checked against homology
/// through duality with U = A (identity twist) on the modes |mu|_inf <= check_box;
/// throws std::logic_error if the two computations disagree.
inline HomologyTable hochschild_cohomology(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma,
                                           long long check_box = 1) {
    HomologyTable t = detail::make_table(ctx, sigma, Direction::cohomology);
    if (check_box >= 0) {
        ModeSet::for_each_in_box(ctx.n(), check_box, [&](const MultiIndex& mu) {
            auto direct = mode_cohomology_dims(ctx, sigma, mu);
            auto dual = mode_homology_dims(ctx, sigma, mu);
            bool in = t.degrees[0].modes.contains(mu);
            for (int p = 0; p <= ctx.n(); ++p) {
                const auto up = static_cast<std::size_t>(p);
                int table = in ? static_cast<int>(binomial(ctx.n(), p)) : 0;
                if (direct[up] != table || dual[static_cast<std::size_t>(ctx.n() - p)] != table)
                    throw std::logic_error("hochschild_cohomology: direct and duality computations disagree at mode " +
                                           mu.to_string() + " in degree " + std::to_string(p));
            }
        });
    }
    return t;
}

}  // namespace qtorus
