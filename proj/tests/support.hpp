#pragma once

// Seeded generators shared by the test suites.

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qtorus/qlaurent.hpp"

namespace qtorus {

// Readable gtest failure messages.
inline void PrintTo(const QLaurent& a, std::ostream* os) { *os << to_string(a); }
inline void PrintTo(const CoeffScalar& a, std::ostream* os) { *os << a.to_string(); }
inline void PrintTo(const Angle& a, std::ostream* os) { *os << a.to_string(); }
inline void PrintTo(const MultiIndex& a, std::ostream* os) { *os << a.to_string(); }
inline void PrintTo(const ScalingAutomorphism& a, std::ostream* os) { *os << a.to_string(); }

}  // namespace qtorus

namespace qtorus::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

enum class ContextKind { generic, root_of_unity, mixed, commutative };

inline std::string kind_name(ContextKind k) {
    switch (k) {
        case ContextKind::generic: return "generic";
        case ContextKind::root_of_unity: return "root-of-unity";
        case ContextKind::mixed: return "mixed";
        default: return "commutative";
    }
}

inline IntMatrix random_skew(Rng& rng, int n, long long range) {
    IntMatrix m(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long x = uniform(rng, -range, range);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -x;
        }
    return m;
}

inline RatMatrix random_rational_skew(Rng& rng, int n, int d) {
    RatMatrix c(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational x(uniform(rng, 0, d - 1), d);
            x.canonicalize();
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x;
            c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -x;
        }
    return c;
}

inline ThetaMatrix random_context(Rng& rng, int n, ContextKind kind) {
    static const int ds[] = {2, 3, 4, 5, 6};
    switch (kind) {
        case ContextKind::commutative: return ThetaMatrix::commutative(n);
        case ContextKind::root_of_unity: {
            int d = ds[uniform(rng, 0, 4)];
            return ThetaMatrix(d, random_rational_skew(rng, n, d), {});
        }
        case ContextKind::generic: {
            int s = static_cast<int>(uniform(rng, 1, 2));
            std::vector<IntMatrix> M;
            for (int t = 0; t < s; ++t) M.push_back(random_skew(rng, n, 2));
            return ThetaMatrix(1, RatMatrix(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))), M);
        }
        default: {
            int d = ds[uniform(rng, 0, 4)];
            return ThetaMatrix(d, random_rational_skew(rng, n, d), {random_skew(rng, n, 2)});
        }
    }
}

inline ThetaMatrix random_context(Rng& rng, int n) {
    return random_context(rng, n, static_cast<ContextKind>(uniform(rng, 0, 2)));
}

inline Angle random_angle(Rng& rng, const ThetaMatrix& ctx) {
    std::vector<long long> m(static_cast<std::size_t>(ctx.s()));
    for (auto& x : m) x = uniform(rng, -2, 2);
    Rational c(uniform(rng, 0, ctx.d() - 1), ctx.d());
    c.canonicalize();
    return Angle(c, m);
}

inline CoeffScalar random_unit_scalar(Rng& rng, const ThetaMatrix& ctx) {
    Rational c(uniform(rng, 1, 5) * (uniform(rng, 0, 1) ? 1 : -1), uniform(rng, 1, 3));
    c.canonicalize();
    return angle_to_scalar(random_angle(rng, ctx), ctx) * CoeffScalar(ctx.field(), c);
}

inline MultiIndex random_index(Rng& rng, int n, long long range) {
    MultiIndex g(n);
    for (auto& x : g) x = uniform(rng, -range, range);
    return g;
}

inline QLaurent random_element(Rng& rng, const ThetaMatrix& ctx, int max_terms = 6, long long range = 2) {
    QLaurent a(ctx);
    int k = static_cast<int>(uniform(rng, 1, max_terms));
    for (int t = 0; t < k; ++t) a.add_term(random_index(rng, ctx.n(), range), random_unit_scalar(rng, ctx));
    return a;
}

inline ScalingAutomorphism random_scaling(Rng& rng, const ThetaMatrix& ctx) {
    std::vector<Angle> b;
    for (int j = 0; j < ctx.n(); ++j) b.push_back(random_angle(rng, ctx));
    return ScalingAutomorphism(std::move(b));
}

}  // namespace qtorus::testing
