#pragma once

// Homological dimensions of the quantum torus in its three flavors. The algebraic
// global dimension comes from Brookes' formula, dg = max rank of a subgroup H of Z^n
// whose monomials pairwise commute, computed here as a common isotropic sublattice.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "qlaurent.hpp"

namespace qtorus {

enum class Flavor { regular, holomorphic, smooth };

inline std::string to_string(Flavor f) {
    switch (f) {
        case Flavor::regular: return "regular";
        case Flavor::holomorphic: return "holomorphic";
        case Flavor::smooth: return "smooth";
    }
    return "?";
}

inline Flavor parse_flavor(const std::string& s) {
    if (s == "regular") return Flavor::regular;
    if (s == "holomorphic") return Flavor::holomorphic;
    if (s == "smooth") return Flavor::smooth;
    throw std::invalid_argument("unknown flavor '" + s + "' (expected regular, holomorphic or smooth)");
}

/// A dimension that is either exact or only a certified lower bound.
struct DimValue {
    int value = 0;
    bool exact = true;

    std::string to_string() const { return exact ? std::to_string(value) : "lower-bound " + std::to_string(value); }
    friend bool operator==(const DimValue&, const DimValue&) = default;
};

struct IsotropicResult {
    int rank = 0;
    std::vector<MultiIndex> basis;
    bool complete = true;
    int upper_bound = 0;  // proven upper bound on the rank
    std::string method;
};

/// Applies the change of variables x^gamma -> x^{U gamma}: theta becomes U^T theta U.
inline ThetaMatrix congruence_transform(const ThetaMatrix& ctx, const IntMatrix& U) {
    const auto n = static_cast<std::size_t>(ctx.n());
    RatMatrix C(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational acc = 0;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (U[k][i] != 0 && U[l][j] != 0) acc += to_rational(U[k][i] * U[l][j]) * ctx.rational_part()[k][l];
            C[i][j] = acc;
        }
    std::vector<IntMatrix> M;
    for (const auto& Mt : ctx.irrational_parts()) M.push_back(mat_mul(transpose(U), mat_mul(Mt, U)));
    return ThetaMatrix(ctx.d(), std::move(C), std::move(M));
}

namespace detail {

inline bool form_vanishes(const IntMatrix& form, const MultiIndex& a, const MultiIndex& b) {
    long long acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) acc += a[i] * form[i][j] * b[j];
    }
    return acc == 0;
}

inline bool is_zero_matrix(const IntMatrix& m) {
    for (const auto& row : m)
        for (auto x : row)
            if (x != 0) return false;
    return true;
}

// Divide by the content and make the first nonzero entry positive.
inline IntMatrix primitive_form(IntMatrix m) {
    long long g = 0, lead = 0;
    for (const auto& row : m)
        for (auto x : row) {
            g = std::gcd(g, x);
            if (lead == 0) lead = x;
        }
    if (g == 0) return m;
    if (lead < 0) g = -g;
    for (auto& row : m)
        for (auto& x : row) x /= g;
    return m;
}

/// The distinct lines spanned by the nonzero M_t. Isotropy for every M_t is isotropy for
/// every form in this list.
inline std::vector<IntMatrix> distinct_forms(const ThetaMatrix& ctx) {
    std::vector<IntMatrix> out;
    for (const auto& Mt : ctx.irrational_parts()) {
        if (is_zero_matrix(Mt)) continue;
        IntMatrix p = primitive_form(Mt);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
    return out;
}

inline int matrix_rank(const IntMatrix& m) { return rank_over_q(m); }

/// An isotropic subspace of a skew form of rank r has dimension at most n - r/2. The
/// bound is taken over small integer combinations of the forms, since a sublattice
/// isotropic for all forms is isotropic for each combination.
inline int pencil_upper_bound(int n, const std::vector<IntMatrix>& forms) {
    const std::size_t s = forms.size();
    int best_rank = 0;
    std::vector<long long> coef(s, -2);
    const auto un = static_cast<std::size_t>(n);
    while (true) {
        IntMatrix comb(un, std::vector<long long>(un, 0));
        for (std::size_t t = 0; t < s; ++t)
            if (coef[t] != 0)
                for (std::size_t i = 0; i < un; ++i)
                    for (std::size_t j = 0; j < un; ++j) comb[i][j] += coef[t] * forms[t][i][j];
        best_rank = std::max(best_rank, matrix_rank(comb));
        std::size_t t = 0;
        while (t < s && coef[t] == 2) coef[t++] = -2;
        if (t == s) break;
        ++coef[t];
    }
    return n - best_rank / 2;
}

/// True when the map Lambda^2 Q^n -> Q^s, e_i ^ e_j -> (M_t[i][j])_t, is injective. Then no
/// two independent vectors are jointly isotropic, so the rank is at most 1.
inline bool wedge_map_injective(const ThetaMatrix& ctx) {
    const int n = ctx.n();
    IntMatrix rows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rows.push_back(ctx.theta(i, j).irrational_part());
    if (rows.empty()) return true;
    if (ctx.s() == 0) return false;
    return rank_over_q(rows) == static_cast<int>(rows.size());
}

inline std::vector<MultiIndex> scaled(std::vector<MultiIndex> basis, long long d) {
    for (auto& v : basis)
        for (auto& x : v) x *= d;
    return basis;
}

inline std::vector<MultiIndex> standard_basis(int n) {
    std::vector<MultiIndex> out;
    for (int i = 0; i < n; ++i) out.push_back(MultiIndex::unit(n, i));
    return out;
}

inline int lattice_rank(const std::vector<MultiIndex>& vs) {
    IntMatrix m;
    for (const auto& v : vs) m.push_back(v.values());
    return rank_over_q(m);
}

// Primitive vectors with entries in [-bound, bound] and positive leading entry, ordered
// by sup norm and then lexicographically.
inline std::vector<MultiIndex> search_candidates(int n, long long bound) {
    std::vector<MultiIndex> out;
    MultiIndex v(n);
    for (auto& x : v) x = -bound;
    while (true) {
        long long g = 0, lead = 0;
        for (auto x : v) {
            g = std::gcd(g, x);
            if (lead == 0) lead = x;
        }
        if (g == 1 && lead > 0) out.push_back(v);
        std::size_t i = v.size();
        while (i > 0 && v[i - 1] == bound) v[--i] = -bound;
        if (i == 0) break;
        ++v[i - 1];
    }
    std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) { return a.sup() < b.sup(); });
    return out;
}

struct CliqueSearch {
    const std::vector<IntMatrix>& forms;
    const std::vector<MultiIndex>& cand;
    int target;
    std::vector<MultiIndex> chosen, best;
    long long nodes = 0;
    long long node_limit;

    void run(std::vector<std::size_t> pool) {
        if (chosen.size() > best.size()) best = chosen;
        if (static_cast<int>(best.size()) >= target || ++nodes > node_limit) return;
        if (chosen.size() + pool.size() <= best.size()) return;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            const MultiIndex& v = cand[pool[k]];
            chosen.push_back(v);
            if (lattice_rank(chosen) == static_cast<int>(chosen.size())) {
                std::vector<std::size_t> next;
                for (std::size_t l = k + 1; l < pool.size(); ++l) {
                    bool ok = true;
                    for (const auto& f : forms)
                        if (!form_vanishes(f, v, cand[pool[l]])) {
                            ok = false;
                            break;
                        }
                    if (ok) next.push_back(pool[l]);
                }
                run(std::move(next));
            }
            chosen.pop_back();
            if (static_cast<int>(best.size()) >= target || nodes > node_limit) return;
            if (chosen.size() + (pool.size() - k - 1) <= best.size()) return;
        }
    }
};

}  // namespace detail

/// True iff every pair of basis monomials commutes exactly and the basis is Z-independent.
inline bool is_valid_witness(const ThetaMatrix& ctx, const std::vector<MultiIndex>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!commutation_angle(ctx, basis[i], basis[j]).is_trivial()) return false;
    return detail::lattice_rank(basis) == static_cast<int>(basis.size());
}

/// Maximal rank of H in Z^n with A_H commutative. Passing to d*H clears the rational part
/// of theta, so only the integer skew forms M_t matter.
inline IsotropicResult max_commutative_rank(const ThetaMatrix& ctx, int bound) {
    if (bound < 1) throw std::invalid_argument("max_commutative_rank: bound must be >= 1");
    const int n = ctx.n();
    const long long d = ctx.d();
    auto forms = detail::distinct_forms(ctx);
    IsotropicResult r;

    if (forms.empty()) {
        r.rank = r.upper_bound = n;
        r.basis = detail::scaled(detail::standard_basis(n), d);
        r.method = "no irrational part: H = d Z^n";
        return r;
    }

    if (forms.size() == 1) {
        // One skew form up to scale: its normal form exhibits a maximal isotropic sublattice
        // (one vector from each hyperbolic block plus the radical).
        AlternatingForm nf = alternating_normal_form(forms[0]);
        const auto un = static_cast<std::size_t>(n);
        auto column = [&](std::size_t c) {
            MultiIndex v(n);
            for (std::size_t i = 0; i < un; ++i) v[i] = nf.U[i][c];
            return v;
        };
        for (int k = 0; k < nf.blocks; ++k) r.basis.push_back(column(static_cast<std::size_t>(2 * k)));
        for (int c = 2 * nf.blocks; c < n; ++c) r.basis.push_back(column(static_cast<std::size_t>(c)));
        r.basis = detail::scaled(std::move(r.basis), d);
        r.rank = r.upper_bound = n - nf.blocks;
        r.method = "single skew form of rank " + std::to_string(2 * nf.blocks) + ": n - rank/2";
        return r;
    }

    r.upper_bound = detail::pencil_upper_bound(n, forms);
    if (detail::wedge_map_injective(ctx)) r.upper_bound = std::min(r.upper_bound, 1);
    auto cand = detail::search_candidates(n, bound);
    std::vector<std::size_t> pool(cand.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    detail::CliqueSearch search{forms, cand, r.upper_bound, {}, {}, 0, 2'000'000};
    search.run(std::move(pool));
    r.basis = detail::scaled(search.best, d);
    r.rank = static_cast<int>(search.best.size());
    r.complete = r.rank == r.upper_bound;
    r.method = "bounded search over entries in [-" + std::to_string(bound) + ", " + std::to_string(bound) +
               "] against the upper bound " + std::to_string(r.upper_bound);
    return r;
}

/// Free rank of the group generated by the q_ij (i < j) equals n(n-1)/2.
inline bool mcconnell_pettit_generic(const ThetaMatrix& ctx) {
    const int n = ctx.n();
    IntMatrix rows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rows.push_back(ctx.theta(i, j).irrational_part());
    const int maximal = n * (n - 1) / 2;
    if (rows.empty() || ctx.s() == 0) return maximal == 0;
    return rank_over_q(rows) == maximal;
}

struct GlobalDimension {
    DimValue value;
    IsotropicResult witness;
    std::string certificate;
};

/// dg of the algebraic quantum torus by Brookes' formula, with the witness re-validated by
/// direct commutation of the spanned monomials.
inline GlobalDimension global_dim_algebraic(const ThetaMatrix& ctx, int bound) {
    GlobalDimension g;
    g.witness = max_commutative_rank(ctx, bound);
    if (!is_valid_witness(ctx, g.witness.basis))
        throw std::logic_error("global_dim_algebraic: witness sublattice is not commutative");
    g.value = {g.witness.rank, g.witness.complete};
    std::string basis;
    for (const auto& v : g.witness.basis) basis += (basis.empty() ? "" : ", ") + v.to_string();
    g.certificate = "Brookes: A_H commutative for H = <" + basis + ">; " + g.witness.method;
    return g;
}

/// db = n in every flavor: the Koszul resolution has length n and Van den Bergh duality holds.
inline int bidimension(const ThetaMatrix& ctx, Flavor) { return ctx.n(); }

struct DimensionReport {
    Flavor flavor = Flavor::regular;
    int n = 0;
    DimValue dg, w_dg, db, w_db;
    std::optional<IsotropicResult> witness;  // regular flavor only
    bool generic_criterion = false;
    std::map<std::string, std::string> notes;
};

inline DimensionReport full_report(const ThetaMatrix& ctx, Flavor flavor, int bound) {
    DimensionReport r;
    r.flavor = flavor;
    r.n = ctx.n();
    r.generic_criterion = mcconnell_pettit_generic(ctx);
    const int n = ctx.n();
    r.db = r.w_db = {bidimension(ctx, flavor), true};
    r.notes["db"] = "theorem: the q-deformed Koszul resolution has length n and satisfies Van den Bergh duality, so db = n";
    r.notes["w_db"] = "theorem: w.db = db for this algebra";
    r.notes["generic_criterion"] = r.generic_criterion
                                       ? "computed: the q_ij (i<j) generate a free abelian group of rank n(n-1)/2"
                                       : "computed: the q_ij (i<j) do not have maximal free rank n(n-1)/2";
    if (flavor == Flavor::regular) {
        GlobalDimension g = global_dim_algebraic(ctx, bound);
        r.dg = r.w_dg = g.value;
        r.witness = g.witness;
        r.notes["dg"] = "computed: " + g.certificate;
        r.notes["w_dg"] = "theorem: w.dg = dg because the algebra is noetherian";
        if (r.generic_criterion && g.value.value != 1 && n >= 1)
            throw std::logic_error("full_report: generic criterion holds but dg != 1");
    } else {
        r.dg = r.w_dg = {n, true};
        r.notes["dg"] = "theorem: dg = db = w.dg = w.db = n for the " + to_string(flavor) + " quantum torus";
        r.notes["w_dg"] = r.notes["dg"];
    }
    return r;
}

}  // namespace qtorus
