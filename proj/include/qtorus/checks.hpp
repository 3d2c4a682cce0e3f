#pragma once

// Seeded verification drivers shared by the command-line tool and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bar_oracle.hpp"
#include "koszul.hpp"
#include "seminorms.hpp"

namespace qtorus {

namespace detail {

inline long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline MultiIndex draw_index(std::mt19937_64& rng, int n, long long range) {
    MultiIndex g(n);
    for (auto& x : g) x = draw(rng, -range, range);
    return g;
}

// small integer times zeta^k u^m
inline CoeffScalar draw_scalar(std::mt19937_64& rng, const ThetaMatrix& ctx) {
    std::vector<long long> m(static_cast<std::size_t>(ctx.s()));
    for (auto& x : m) x = draw(rng, -1, 1);
    long long c = draw(rng, 1, 3) * (draw(rng, 0, 1) ? 1 : -1);
    return CoeffScalar::monomial(ctx.field(), draw(rng, 0, ctx.d() - 1), m, to_rational(c));
}

inline WedgeIndex draw_wedge(std::mt19937_64& rng, int n, int p) {
    auto basis = wedge_basis(n, p);
    return basis[static_cast<std::size_t>(draw(rng, 0, static_cast<long long>(basis.size()) - 1))];
}

}  // namespace detail

/// A random element of K_p with up to `terms` basis terms.
inline KoszulElement random_koszul_element(std::mt19937_64& rng, const ThetaMatrix& ctx, int p, int terms = 4,
                                           long long range = 2) {
    KoszulElement e(ctx, p);
    for (int k = 0; k < terms; ++k)
        e.add_term(detail::draw_index(rng, ctx.n(), range), detail::draw_wedge(rng, ctx.n(), p),
                   detail::draw_index(rng, ctx.n(), range), detail::draw_scalar(rng, ctx));
    return e;
}

struct ComplexCheck {
    bool pass = true;
    int elements = 0;
    std::optional<int> failing_degree;
    std::string counterexample;
};

/// d o d = 0 on K_p for p >= 2 and mu o d = 0 on K_1, on `samples` random elements per degree.
inline ComplexCheck check_koszul_complex(const ThetaMatrix& ctx, std::uint64_t seed, int samples) {
    std::mt19937_64 rng(seed);
    ComplexCheck r;
    for (int p = 1; p <= ctx.n(); ++p)
        for (int k = 0; k < samples; ++k) {
            KoszulElement e = random_koszul_element(rng, ctx, p);
            KoszulElement de = koszul_differential(ctx, e);
            bool ok = p == 1 ? augmentation(ctx, de).is_zero() : koszul_differential(ctx, de).is_zero();
            ++r.elements;
            if (!ok) {
                r.pass = false;
                r.failing_degree = p;
                r.counterexample = e.to_string();
                return r;
            }
        }
    return r;
}

struct OracleMismatch {
    int degree = 0;
    MultiIndex mode;
    int oracle_dim = 0;
    long long koszul_dim = 0;
};

struct OracleCheck {
    bool pass = true;
    int bound = 0;
    int max_degree = 0;
    long long reliable_modes = 0;    // (degree, mode) pairs compared
    long long unreliable_modes = 0;  // (degree, mode) pairs outside the window
    std::vector<int> dims_at_zero;  // oracle dims at mode 0, degree 0 upward
    std::optional<OracleMismatch> mismatch;
};

/// Compares hochschild_homology with the truncated bar complex on every reliable mode in
/// degrees 0..min(n, B-1, 3). Throws infeasible_error beyond the oracle limits.
inline OracleCheck check_oracle(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma, int bound) {
    OracleCheck r;
    r.bound = bound;
    r.max_degree = std::min({ctx.n(), bound - 1, BarOracleLimits::max_degree});
    BarComplex bar(ctx, sigma, bound, std::max(r.max_degree, 0));
    HomologyTable table = hochschild_homology(ctx, sigma);
    for (int p = 0; p <= r.max_degree; ++p) {
        ModeSet::for_each_in_box(ctx.n(), bound, [&](const MultiIndex& g) {
            if (!bar.reliable(g, p)) {
                ++r.unreliable_modes;
                return;
            }
            ++r.reliable_modes;
            int dim = bar.homology_dim(p, g);
            const auto& deg = table.degrees[static_cast<std::size_t>(p)];
            long long expect = deg.modes.contains(g) ? deg.multiplicity : 0;
            if (g.is_zero()) r.dims_at_zero.push_back(dim);
            if (dim != expect && !r.mismatch) {
                r.pass = false;
                r.mismatch = OracleMismatch{p, g, dim, expect};
            }
        });
    }
    return r;
}

struct ContinuitySweep {
    bool pass = true;
    int pairs = 0;
    double worst_relative_margin_rho = 0;  // min over pairs of (rhs - lhs) / rhs
    double worst_relative_margin_k = 0;
    std::optional<ContinuityReport> failure;
};

/// continuity_check on `samples` random pairs at each rho.
inline ContinuitySweep check_continuity(const NumericContext& ctx, std::uint64_t seed, int samples,
                                        const std::vector<double>& rhos, int k = 2) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const int n = ctx.theta.n();
    auto element = [&] {
        NumericElement a(n);
        const long long terms = detail::draw(rng, 1, 5);
        for (long long t = 0; t < terms; ++t) a.add_term(detail::draw_index(rng, n, 3), {coef(rng), coef(rng)});
        return a;
    };
    ContinuitySweep s;
    s.worst_relative_margin_rho = s.worst_relative_margin_k = 1.0;
    for (double rho : rhos)
        for (int i = 0; i < samples; ++i) {
            NumericElement a = element(), b = element();
            ContinuityReport r = continuity_check(ctx, a, b, rho, k);
            ++s.pairs;
            if (r.rhs_rho > 0) s.worst_relative_margin_rho = std::min(s.worst_relative_margin_rho, r.margin_rho / r.rhs_rho);
            if (r.rhs_k > 0) s.worst_relative_margin_k = std::min(s.worst_relative_margin_k, r.margin_k / r.rhs_k);
            if (!r.pass && s.pass) {
                s.pass = false;
                s.failure = r;
            }
        }
    return s;
}

}  // namespace qtorus
